#pragma once

// Gabor phase retrieval laboratory: closed-form Gabor/Bargmann calculus for
// polynomial-times-Gaussian signals, sampling geometries with density
// estimators, an entire-function toolkit, counterexample factories and a
// verification harness.

#include "gpr/counterexamples.hpp"
#include "gpr/entire.hpp"
#include "gpr/moments.hpp"
#include "gpr/parallel.hpp"
#include "gpr/probe.hpp"
#include "gpr/sampling.hpp"
#include "gpr/scaled.hpp"
#include "gpr/signal.hpp"
#include "gpr/transforms.hpp"
#include "gpr/verify.hpp"
