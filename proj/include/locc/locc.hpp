#pragma once

// Deterministic LOCC convertibility of bipartite pure states via
// majorization of Schmidt spectra: classification, entanglement-assisted
// conversion plans, mutual co-operation syntheses, and brute-force
// verification oracles.

#include "locc/assist.hpp"
#include "locc/coop.hpp"
#include "locc/errors.hpp"
#include "locc/json_io.hpp"
#include "locc/nielsen.hpp"
#include "locc/numeric.hpp"
#include "locc/oracle.hpp"
#include "locc/rational.hpp"
#include "locc/schmidt.hpp"
