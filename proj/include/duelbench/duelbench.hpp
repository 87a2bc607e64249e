#pragma once

// Umbrella header for the dueling-bandit library.

#include "duelbench/batches.hpp"
#include "duelbench/counts.hpp"
#include "duelbench/dts.hpp"
#include "duelbench/environment.hpp"
#include "duelbench/error.hpp"
#include "duelbench/matrix_io.hpp"
#include "duelbench/merge_bandit.hpp"
#include "duelbench/merge_dts.hpp"
#include "duelbench/merge_rucb.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/policy_spec.hpp"
#include "duelbench/preference_matrix.hpp"
#include "duelbench/rng.hpp"
#include "duelbench/rucb.hpp"
#include "duelbench/runner.hpp"
#include "duelbench/scores.hpp"
#include "duelbench/self_sparring.hpp"
#include "duelbench/serialize.hpp"
#include "duelbench/svg_plot.hpp"
#include "duelbench/theory.hpp"
#include "duelbench/ucb.hpp"
#include "duelbench/version.hpp"
