#pragma once

#include "sse/bounds.hpp"
#include "sse/channel.hpp"
#include "sse/harness.hpp"
#include "sse/islands.hpp"
#include "sse/rng.hpp"
#include "sse/statistics.hpp"
