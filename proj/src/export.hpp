#pragma once

#include <string>

#include "harness.hpp"

namespace tbp {

/// policy,T,N,error_rate,ci_half_width,censored,wall_time_ms — with
/// mean_regret in place of error_rate in regret mode. Doubles use the
/// shortest round-trip form; everything except wall_time_ms is bitwise
/// deterministic across reruns.
std::string to_csv(const ExperimentResult& result);

/// {"config": <echo that parses back to an equal config>, "complexity":
/// H or null, "cells": [...]}.
std::string to_json_text(const ExperimentResult& result);

/// Self-contained error-decay plot: one polyline per policy, x = T,
/// y = log10(value). Censored cells (value 0) are drawn hollow at 1/(2N).
/// Byte-identical across reruns of the same config.
std::string to_svg(const ExperimentResult& result);

}  // namespace tbp
