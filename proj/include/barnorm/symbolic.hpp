#pragma once

// Statistics and classification of binary sequences: symbol and word
// frequencies, subword complexity, balance, Sturmian verdicts, and the
// reference circle-map codings (rotation, double rotation, mismatched
// coding interval).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "barnorm/sequence.hpp"

namespace barnorm {

enum class SturmianVerdict : uint8_t { SturmianCandidate, GeneralizedSturmian, NonSturmian };

inline const char* to_string(SturmianVerdict v) {
    switch (v) {
        case SturmianVerdict::SturmianCandidate: return "sturmian-candidate";
        case SturmianVerdict::GeneralizedSturmian: return "generalized-sturmian";
        default: return "non-sturmian";
    }
}

struct SequenceStats {
    std::size_t length = 0;
    double freq0 = 0.0, freq1 = 0.0;
    std::map<std::string, double> word_freqs;  // all words of length <= W
    std::vector<std::size_t> complexity;       // p(1..n_max)
    std::vector<std::size_t> balance_defect;   // b(1..n_max)
    SturmianVerdict verdict = SturmianVerdict::NonSturmian;
    std::optional<std::string> missing_digram;
};

namespace detail {

// Distinct length-n factors, windows packed into 64-bit keys.
inline std::size_t complexity_at(const SymbolSequence& s, int n, std::vector<uint64_t>& scratch) {
    const std::size_t len = s.size();
    if (n <= 0 || static_cast<std::size_t>(n) > len) return 0;
    const uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    scratch.clear();
    uint64_t w = 0;
    for (std::size_t i = 0; i < len; ++i) {
        w = ((w << 1) | s.bits[i]) & mask;
        if (i + 1 >= static_cast<std::size_t>(n)) scratch.push_back(w);
    }
    std::sort(scratch.begin(), scratch.end());
    return static_cast<std::size_t>(std::unique(scratch.begin(), scratch.end()) - scratch.begin());
}

}  // namespace detail

inline SequenceStats analyze(const SymbolSequence& s, int n_max = 20, int word_len = 4) {
    if (n_max < 1 || n_max > 63) throw std::invalid_argument("analyze: n_max must be in [1, 63]");
    if (word_len < 1 || word_len > 20) throw std::invalid_argument("analyze: word_len must be in [1, 20]");
    if (s.size() < static_cast<std::size_t>(n_max) + 1)
        throw std::invalid_argument("analyze: sequence shorter than the analysis window");

    SequenceStats st;
    st.length = s.size();
    std::size_t ones = 0;
    for (uint8_t b : s.bits) ones += b;
    st.freq1 = static_cast<double>(ones) / s.size();
    st.freq0 = static_cast<double>(s.size() - ones) / s.size();

    for (int k = 1; k <= word_len; ++k) {
        std::vector<std::size_t> counts(std::size_t{1} << k, 0);
        uint64_t w = 0;
        const uint64_t mask = (uint64_t{1} << k) - 1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            w = ((w << 1) | s.bits[i]) & mask;
            if (i + 1 >= static_cast<std::size_t>(k)) ++counts[w];
        }
        const double windows = static_cast<double>(s.size() - k + 1);
        for (std::size_t v = 0; v < counts.size(); ++v) {
            std::string word(k, '0');
            for (int b = 0; b < k; ++b)
                if (v & (std::size_t{1} << (k - 1 - b))) word[b] = '1';
            st.word_freqs[word] = counts[v] / windows;
        }
    }

    std::vector<uint64_t> scratch;
    scratch.reserve(s.size());
    st.complexity.resize(n_max);
    st.balance_defect.resize(n_max);
    for (int n = 1; n <= n_max; ++n)
        st.complexity[n - 1] = detail::complexity_at(s, n, scratch);

    // b(n) = spread of the per-window zero counts (equivalent to the max
    // |count_0(u) - count_0(v)| over equal-length factor pairs).
    std::vector<std::size_t> zero_prefix(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        zero_prefix[i + 1] = zero_prefix[i] + (s.bits[i] == 0 ? 1 : 0);
    for (int n = 1; n <= n_max; ++n) {
        std::size_t zmin = n + 1, zmax = 0;
        for (std::size_t i = 0; i + n <= s.size(); ++i) {
            const std::size_t z = zero_prefix[i + n] - zero_prefix[i];
            zmin = std::min(zmin, z);
            zmax = std::max(zmax, z);
        }
        st.balance_defect[n - 1] = zmax - zmin;
    }

    bool has00 = false, has11 = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s.bits[i] == 0 && s.bits[i + 1] == 0) has00 = true;
        if (s.bits[i] == 1 && s.bits[i + 1] == 1) has11 = true;
    }
    if (!has00)
        st.missing_digram = "00";
    else if (!has11)
        st.missing_digram = "11";

    bool linear = true;      // p(n) == n+1 for all tested n
    bool superlinear = false;  // p(n) > n+1 somewhere
    for (int n = 1; n <= n_max; ++n) {
        if (st.complexity[n - 1] != static_cast<std::size_t>(n) + 1) linear = false;
        if (st.complexity[n - 1] > static_cast<std::size_t>(n) + 1) superlinear = true;
    }
    // Lemma contrapositive: a (generalized) Sturmian sequence misses exactly
    // one of 00/11, and its complexity never exceeds n+1.
    if ((has00 && has11) || superlinear)
        st.verdict = SturmianVerdict::NonSturmian;
    else if (linear)
        st.verdict = SturmianVerdict::SturmianCandidate;
    else
        st.verdict = SturmianVerdict::GeneralizedSturmian;  // p(n) <= n somewhere: eventually periodic
    return st;
}

// sigma_n = floor((n+1)theta + eta) - floor(n theta + eta).
inline SymbolSequence gen_sturmian(double theta, double eta, int n) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("gen_sturmian: theta must be in (0,1)");
    if (n < 1) throw std::invalid_argument("gen_sturmian: n must be >= 1");
    SymbolSequence seq;
    seq.bits.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double a = std::floor((k + 1) * theta + eta);
        const double b = std::floor(k * theta + eta);
        seq.push_back(static_cast<int>(a - b));
    }
    return seq;
}

// phi_{k+1} = phi_k + theta mod 1; sigma_k = 1 iff phi_k in [0, theta).
inline SymbolSequence gen_rotation_coding(double theta, double phi0, int n) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("gen_rotation_coding: theta must be in (0,1)");
    if (n < 1) throw std::invalid_argument("gen_rotation_coding: n must be >= 1");
    SymbolSequence seq;
    seq.bits.reserve(n);
    double phi = phi0 - std::floor(phi0);
    for (int k = 0; k < n; ++k) {
        seq.push_back(phi < theta ? 1 : 0);
        phi += theta;
        if (phi >= 1.0) phi -= 1.0;
    }
    return seq;
}

// Double rotation: +theta1 on [0, theta), +theta2 on [theta, 1).
inline SymbolSequence gen_double_rotation(double theta1, double theta2, double theta, double phi0,
                                          int n) {
    for (double v : {theta1, theta2, theta})
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("gen_double_rotation: parameters must be in [0,1)");
    if (n < 1) throw std::invalid_argument("gen_double_rotation: n must be >= 1");
    SymbolSequence seq;
    seq.bits.reserve(n);
    double phi = phi0 - std::floor(phi0);
    for (int k = 0; k < n; ++k) {
        const bool in_i1 = phi < theta;
        seq.push_back(in_i1 ? 1 : 0);
        phi += in_i1 ? theta1 : theta2;
        if (phi >= 1.0) phi -= 1.0;
    }
    return seq;
}

// Rotation by theta, but coded against the interval [0, theta0) with
// theta0 != theta allowed.
inline SymbolSequence gen_mismatched_coding(double theta, double theta0, double phi0, int n) {
    if (!(theta > 0.0 && theta < 1.0) || !(theta0 > 0.0 && theta0 < 1.0))
        throw std::invalid_argument("gen_mismatched_coding: theta, theta0 must be in (0,1)");
    if (n < 1) throw std::invalid_argument("gen_mismatched_coding: n must be >= 1");
    SymbolSequence seq;
    seq.bits.reserve(n);
    double phi = phi0 - std::floor(phi0);
    for (int k = 0; k < n; ++k) {
        seq.push_back(phi < theta0 ? 1 : 0);
        phi += theta;
        if (phi >= 1.0) phi -= 1.0;
    }
    return seq;
}

// Histogram of maximal run lengths of the given symbol.
inline std::map<std::size_t, std::size_t> run_lengths(const SymbolSequence& s, int symbol) {
    std::map<std::size_t, std::size_t> hist;
    std::size_t run = 0;
    for (uint8_t b : s.bits) {
        if (b == symbol) {
            ++run;
        } else if (run > 0) {
            ++hist[run];
            run = 0;
        }
    }
    if (run > 0) ++hist[run];
    return hist;
}

struct CompareReport {
    SequenceStats left, right;
    std::map<std::size_t, std::size_t> runs0_left, runs1_left, runs0_right, runs1_right;
    std::map<std::string, double> word_gaps;  // |freq_left - freq_right| per word
    double max_freq_gap = 0.0;
};

inline CompareReport compare(const SymbolSequence& s, const SymbolSequence& t, int n_max = 20,
                             int word_len = 4) {
    if (s.size() != t.size())
        throw std::invalid_argument("compare: sequences must cover equal analysis windows");
    CompareReport rep;
    rep.left = analyze(s, n_max, word_len);
    rep.right = analyze(t, n_max, word_len);
    rep.runs0_left = run_lengths(s, 0);
    rep.runs1_left = run_lengths(s, 1);
    rep.runs0_right = run_lengths(t, 0);
    rep.runs1_right = run_lengths(t, 1);
    for (const auto& [word, f] : rep.left.word_freqs) {
        const double gap = std::abs(f - rep.right.word_freqs.at(word));
        rep.word_gaps[word] = gap;
        rep.max_freq_gap = std::max(rep.max_freq_gap, gap);
    }
    return rep;
}

}  // namespace barnorm
