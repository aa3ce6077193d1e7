#pragma once

#include "minds/calculus.hpp"
#include "minds/corpus.hpp"
#include "minds/curve_io.hpp"
#include "minds/engine.hpp"
#include "minds/errors.hpp"
#include "minds/metaknowledge.hpp"
#include "minds/random.hpp"
#include "minds/scenario_io.hpp"
#include "minds/simulator.hpp"
