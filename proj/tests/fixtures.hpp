#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "mixedcore/core.hpp"
#include "mixedcore/json_io.hpp"

namespace fixtures {

using namespace mixedcore;

inline Rational q(const char* text) { return *Rational::parse(text); }

inline RationalVector v(std::initializer_list<const char*> items) {
    RationalVector out;
    for (const char* s : items) {
        out.push_back(q(s));
    }
    return out;
}

inline std::string data_path(const std::string& name) { return std::string(MIXEDCORE_DATA_DIR) + "/" + name; }

inline nlohmann::json load(const std::string& name) {
    std::ifstream in(data_path(name));
    return nlohmann::json::parse(in);
}

inline Economy economy(const std::string& name) { return io::read_economy(load(name)); }

/// Atom A1 (mass 1, ω=(0,1), a=(3/4,1/4)); continuum C2 (mass 1, ω=(1,0), a=(1/4,3/4)).
inline Economy e0() { return economy("e0.json"); }
/// E0 with the endowments swapped; ω is Pareto optimal.
inline Economy e1() { return economy("e1.json"); }
/// E0 with the continuum's mass raised to 3.
inline Economy e0_heavy() { return economy("e0_heavy.json"); }

inline Allocation alloc(std::initializer_list<std::pair<const char*, RationalVector>> items) {
    Allocation x;
    for (const auto& [id, b] : items) {
        x.bundles[id] = b;
    }
    return x;
}

}  // namespace fixtures
