#ifndef KWGRAPH_KWGRAPH_HPP
#define KWGRAPH_KWGRAPH_HPP

// Core numerics; no third-party dependencies.
#include "kwgraph/calculus.hpp"
#include "kwgraph/dense.hpp"
#include "kwgraph/error.hpp"
#include "kwgraph/functional.hpp"
#include "kwgraph/graph.hpp"
#include "kwgraph/solver.hpp"
#include "kwgraph/spectral.hpp"
#include "kwgraph/verify.hpp"

#endif  // KWGRAPH_KWGRAPH_HPP
