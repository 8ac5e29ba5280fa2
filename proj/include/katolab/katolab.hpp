#pragma once

#include "katolab/data_space.hpp"
#include "katolab/diagonal_model.hpp"
#include "katolab/duhamel.hpp"
#include "katolab/errors.hpp"
#include "katolab/estimates.hpp"
#include "katolab/experiment.hpp"
#include "katolab/fft.hpp"
#include "katolab/grid.hpp"
#include "katolab/hardy_littlewood.hpp"
#include "katolab/interpolation.hpp"
#include "katolab/kato_solver.hpp"
#include "katolab/lp_decomposition.hpp"
#include "katolab/multiplier.hpp"
#include "katolab/nonlinearity.hpp"
#include "katolab/norms.hpp"
#include "katolab/probes.hpp"
#include "katolab/reference.hpp"
#include "katolab/reports.hpp"
#include "katolab/rng.hpp"
#include "katolab/space_tag.hpp"
#include "katolab/spectral_field.hpp"
#include "katolab/threshold.hpp"
#include "katolab/time_grid.hpp"
#include "katolab/trajectory.hpp"
