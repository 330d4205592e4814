#pragma once

#include "hyperrig/error.hpp"
#include "hyperrig/params.hpp"
#include "hyperrig/seeding.hpp"
#include "hyperrig/hypervector.hpp"
#include "hyperrig/permutation.hpp"
#include "hyperrig/core.hpp"
#include "hyperrig/memory.hpp"
#include "hyperrig/codebook.hpp"
#include "hyperrig/codec.hpp"
#include "hyperrig/parallel.hpp"
#include "hyperrig/laws.hpp"
#include "hyperrig/bench.hpp"
