#pragma once

#include "config.hpp"
#include "table.hpp"

namespace dsatom::cli {

Table cmd_classify(const CommonOptions& common, const ClassifyOptions& opts);
Table cmd_spectrum(const CommonOptions& common, const SpectrumOptions& opts);
Table cmd_tunnel(const CommonOptions& common, const TunnelOptions& opts);
Table cmd_heun_eval(const CommonOptions& common, const HeunEvalOptions& opts);
Table cmd_dirac_chart(const CommonOptions& common, const DiracChartOptions& opts);

}  // namespace dsatom::cli
