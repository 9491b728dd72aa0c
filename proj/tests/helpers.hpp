#pragma once

#include <string>
#include <vector>

#include "nsplit/necklace.hpp"

// "ABAB" -> necklace with beads {0,1,0,1}
inline nsplit::Necklace neck(const std::string& letters, int k = 2) {
    std::vector<std::int32_t> beads;
    beads.reserve(letters.size());
    for (char ch : letters) beads.push_back(static_cast<std::int32_t>(ch - 'A'));
    return nsplit::necklace_from_beads(k, std::move(beads));
}
