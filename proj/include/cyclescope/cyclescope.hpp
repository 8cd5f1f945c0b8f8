#ifndef CYCLESCOPE_CYCLESCOPE_HPP
#define CYCLESCOPE_CYCLESCOPE_HPP

// Business-cycle frequency identification for monthly series: almost periodic
// mean modelling, subsampling significance scans, and HP extraction with the
// smoothing parameter tied to the identified frequencies.

#include "cyclescope/csv.hpp"
#include "cyclescope/filter.hpp"
#include "cyclescope/hp_filter.hpp"
#include "cyclescope/oracles.hpp"
#include "cyclescope/pipeline.hpp"
#include "cyclescope/report.hpp"
#include "cyclescope/rng.hpp"
#include "cyclescope/series.hpp"
#include "cyclescope/spectral.hpp"
#include "cyclescope/subsampling.hpp"
#include "cyclescope/synth.hpp"

#endif
