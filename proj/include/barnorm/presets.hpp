#pragma once

// Named parameter presets for the studied matrix pairs.

#include <string>
#include <vector>

#include "barnorm/barabanov.hpp"
#include "barnorm/linalg.hpp"

namespace barnorm {

struct CasePreset {
    std::string name;
    MatrixPair pair;
    Scheme scheme;  // recommended iteration scheme for this family
};

inline const std::vector<CasePreset>& case_catalog() {
    static const std::vector<CasePreset> catalog = {
        {"eqM1-mycase", make_affine_pair(0.576, 0.8, 0.9, 1.1, 1.0, 0.9), Scheme::PowerNormalize},
        {"case1", make_rotation_pair(0.4, 0.8, 0.75), Scheme::MaxRelaxation},
        {"case2", make_rotation_pair(0.6151, 0.8, 0.75), Scheme::MaxRelaxation},
        {"case3", make_rotation_pair(0.7, 0.8, 0.75), Scheme::MaxRelaxation},
    };
    return catalog;
}

inline const CasePreset& find_preset(const std::string& name) {
    for (const auto& p : case_catalog())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace barnorm
