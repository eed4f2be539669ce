#ifndef RANKFN_RANKFN_HPP
#define RANKFN_RANKFN_HPP

#include "rankfn/equations.hpp"
#include "rankfn/error.hpp"
#include "rankfn/geometry.hpp"
#include "rankfn/oracle.hpp"
#include "rankfn/partition.hpp"
#include "rankfn/rank_function.hpp"

#endif  // RANKFN_RANKFN_HPP
