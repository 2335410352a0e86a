#pragma once

#include "rsq/arith.hpp"
#include "rsq/cauchy.hpp"
#include "rsq/constructions.hpp"
#include "rsq/error.hpp"
#include "rsq/oracle.hpp"
#include "rsq/residue_class.hpp"
#include "rsq/scanner.hpp"
