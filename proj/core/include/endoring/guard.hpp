#pragma once

#include <cstdint>

namespace endoring {

/// Caps for operations that enumerate group elements or endomorphisms.
/// The environment variable ENDORING_ENUM_CAP, when set, overrides both caps
/// with a single value.
struct EnumLimits {
    std::uint64_t max_elements = 65536;
    std::uint64_t max_endos = 16384;

    static EnumLimits from_env();
};

} // namespace endoring
