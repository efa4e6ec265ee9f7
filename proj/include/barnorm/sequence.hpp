#pragma once

// Binary index sequences, written and read as plain 0/1 character strings.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace barnorm {

struct SymbolSequence {
    std::vector<uint8_t> bits;

    SymbolSequence() = default;
    explicit SymbolSequence(std::vector<uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const { return bits.size(); }
    uint8_t operator[](std::size_t i) const { return bits[i]; }
    void push_back(int b) { bits.push_back(static_cast<uint8_t>(b)); }

    std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (uint8_t b : bits) s.push_back(b ? '1' : '0');
        return s;
    }

    static SymbolSequence from_string(const std::string& s) {
        SymbolSequence seq;
        seq.bits.reserve(s.size());
        for (char ch : s) {
            if (ch == '0' || ch == '1')
                seq.bits.push_back(static_cast<uint8_t>(ch - '0'));
            else if (ch != '\n' && ch != '\r' && ch != ' ' && ch != '\t')
                throw std::invalid_argument("sequence string: unexpected character");
        }
        return seq;
    }

    friend bool operator==(const SymbolSequence& a, const SymbolSequence& b) {
        return a.bits == b.bits;
    }
};

}  // namespace barnorm
