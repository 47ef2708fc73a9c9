#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pavlab {

uint64_t fnv1a64(std::string_view bytes);

// Every output file opens with one of these:
//   # config_hash=0123456789abcdef seed=42 version=0.1.0
struct Provenance {
    uint64_t config_hash = 0;
    uint64_t seed = 0;
    std::string version;
};

std::string provenance_line(const Provenance& p);

}
