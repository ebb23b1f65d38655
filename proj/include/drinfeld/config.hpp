#pragma once

#include <string>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

// Flat key=value run configuration. All defaults are echoed in output
// headers so every run is reproducible from its own transcript.
struct RunConfig {
    int p = 2;
    int e0 = 1;
    int ram = 2;
    long long prec = 64;
    int D = 8;
    int D_ceiling = 24;
    long long m_u = 8;
    std::string N = "0 1";  // level polynomial, canonical PolyA encoding
    unsigned long long seed = 1;

    int q() const {
        int v = 1;
        for (int i = 0; i < e0; ++i) v *= p;
        return v;
    }

    void set(const std::string& key, const std::string& value);
    static RunConfig from_file(const std::string& path);
    void apply_overrides(const std::vector<std::string>& kvs);  // "key=value" entries
    std::string header(const Fq& F) const;                      // "# key=value" lines
};

}  // namespace drinfeld
