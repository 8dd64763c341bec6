#pragma once

#include "cyclekit/csv.hpp"
#include "cyclekit/data_pipeline.hpp"
#include "cyclekit/discrete_map.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/fitting.hpp"
#include "cyclekit/integrator.hpp"
#include "cyclekit/model.hpp"
#include "cyclekit/numerics.hpp"
#include "cyclekit/params_file.hpp"
#include "cyclekit/period_analysis.hpp"
#include "cyclekit/svg_plot.hpp"
