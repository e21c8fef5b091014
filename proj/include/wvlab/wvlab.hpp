#pragma once

#include "wvlab/estimator.hpp"
#include "wvlab/probe_oracle.hpp"
#include "wvlab/qcore.hpp"
#include "wvlab/sampling.hpp"
#include "wvlab/scenarios.hpp"
#include "wvlab/sweep.hpp"
#include "wvlab/transforms.hpp"
#include "wvlab/weakval.hpp"
