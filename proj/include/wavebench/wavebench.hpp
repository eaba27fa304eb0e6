#pragma once

// Umbrella header for the wavebench toolkit: signal-entropy analysis and
// lossless data-representation benchmarking for multi-channel LPCM
// waveform datasets.

#include "wavebench/bench.hpp"
#include "wavebench/codecs.hpp"
#include "wavebench/dataset.hpp"
#include "wavebench/entropy.hpp"
#include "wavebench/errors.hpp"
#include "wavebench/histogram.hpp"
#include "wavebench/ingest.hpp"
#include "wavebench/manifest.hpp"
#include "wavebench/parallel.hpp"
#include "wavebench/synth.hpp"
#include "wavebench/transforms.hpp"
#include "wavebench/wav.hpp"
