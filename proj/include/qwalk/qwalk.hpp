#pragma once

// Umbrella header.

#include "core.hpp"
#include "gate.hpp"
#include "state.hpp"
#include "circuit.hpp"
#include "graph.hpp"
#include "walk.hpp"
#include "encoding.hpp"
#include "perm_synth.hpp"
#include "families.hpp"
#include "verify.hpp"
#include "serialize.hpp"
