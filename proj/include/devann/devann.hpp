#pragma once

#include "devann/brain.hpp"
#include "devann/cartpole.hpp"
#include "devann/cgp.hpp"
#include "devann/config.hpp"
#include "devann/dataset.hpp"
#include "devann/errors.hpp"
#include "devann/evolution.hpp"
#include "devann/experiment.hpp"
#include "devann/fitness.hpp"
#include "devann/json_io.hpp"
#include "devann/learning.hpp"
#include "devann/parallel.hpp"
#include "devann/rng.hpp"
#include "devann/svg_plot.hpp"
