#pragma once

#include "distprof/approximator.hpp"
#include "distprof/convolution.hpp"
#include "distprof/errors.hpp"
#include "distprof/hash_family.hpp"
#include "distprof/io.hpp"
#include "distprof/metric.hpp"
#include "distprof/one_mismatch.hpp"
#include "distprof/oracle.hpp"
#include "distprof/profile.hpp"
#include "distprof/rng.hpp"
#include "distprof/sampler.hpp"
#include "distprof/symbols.hpp"
