#pragma once

#include <stdexcept>
#include <string>

namespace wavebench {

/// Base class for all toolkit errors. Subclasses exist so callers can
/// distinguish failure categories without parsing messages.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File length or buffer length is not a multiple of the required unit.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (CSV rows, config files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A column or field holds a value of the wrong kind (e.g. real in an
/// integer column).
class TypeError : public Error {
public:
    using Error::Error;
};

/// A sample or code falls outside the declared ADC range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Structured container (WAV/RIFF) is malformed.
class ContainerError : public Error {
public:
    using Error::Error;
};

/// Container uses an encoding this toolkit does not handle (float PCM,
/// compressed WAV, unusual bit depths).
class UnsupportedEncodingError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Histograms of different bit depths cannot be merged.
class MergeError : public Error {
public:
    using Error::Error;
};

/// Entropy of an empty histogram is undefined.
class UndefinedEntropyError : public Error {
public:
    using Error::Error;
};

/// A decoded stream reconstructs values that violate the declared domain.
class CorruptionError : public Error {
public:
    using Error::Error;
};

/// Variable-length decode hit a truncated value.
class DecodeError : public Error {
public:
    using Error::Error;
};

/// Byte stream is longer or shorter than the declared element count.
class LengthError : public Error {
public:
    using Error::Error;
};

/// Serialization width/stride incompatible with the data.
class LayoutError : public Error {
public:
    using Error::Error;
};

/// Compressed stream failed to decompress back to valid data.
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// An optional external codec adapter is not present on this system.
class AdapterUnavailableError : public Error {
public:
    using Error::Error;
};

/// A SynthSpec violates its own constraints (clipping headroom etc.).
class SpecError : public Error {
public:
    using Error::Error;
};

/// Invalid transform-chain/codec combination in matrix enumeration.
class EnumerationError : public Error {
public:
    using Error::Error;
};

/// Files in a corpus disagree on channel schema or bit depth.
class CorpusError : public Error {
public:
    using Error::Error;
};

/// Chunk plan is unusable (e.g. chunk smaller than one frame).
class PlanError : public Error {
public:
    using Error::Error;
};

} // namespace wavebench
