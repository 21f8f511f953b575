#pragma once

#include "bnsl/arc_bounded.hpp"
#include "bnsl/core.hpp"
#include "bnsl/generators.hpp"
#include "bnsl/graphs.hpp"
#include "bnsl/io.hpp"
#include "bnsl/matching.hpp"
#include "bnsl/oracle.hpp"
#include "bnsl/parallel.hpp"
#include "bnsl/pi1v.hpp"
#include "bnsl/scores.hpp"
