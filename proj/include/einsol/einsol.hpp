#pragma once

// Umbrella header: expression DSL, jets, geometry operators, soliton identity
// catalogue, built-in manifolds, and report generation.

#include <einsol/catalogue.hpp>
#include <einsol/errors.hpp>
#include <einsol/expr.hpp>
#include <einsol/fd.hpp>
#include <einsol/geometry.hpp>
#include <einsol/jet.hpp>
#include <einsol/linalg.hpp>
#include <einsol/manifold.hpp>
#include <einsol/report.hpp>
#include <einsol/soliton.hpp>
