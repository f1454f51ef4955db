/*
Copyright 2026 the cranidnc authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace cranidnc {

/// Set over a universe of at most 64 indexed elements (files or users),
/// stored as a word-sized bitmask. Element counts are validated at config
/// parse time, so the 64-element cap is an invariant here.
class SmallSet {
  public:
    constexpr SmallSet() = default;
    constexpr explicit SmallSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr SmallSet single(int i) { return SmallSet(std::uint64_t{1} << i); }
    static constexpr SmallSet first_n(int n) {
        return SmallSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }

    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
    constexpr void add(int i) { bits_ |= std::uint64_t{1} << i; }
    constexpr void remove(int i) { bits_ &= ~(std::uint64_t{1} << i); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int count() const { return std::popcount(bits_); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr bool intersects(SmallSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr bool subset_of(SmallSet o) const { return (bits_ & ~o.bits_) == 0; }

    constexpr SmallSet operator&(SmallSet o) const { return SmallSet(bits_ & o.bits_); }
    constexpr SmallSet operator|(SmallSet o) const { return SmallSet(bits_ | o.bits_); }
    constexpr SmallSet minus(SmallSet o) const { return SmallSet(bits_ & ~o.bits_); }
    constexpr SmallSet& operator|=(SmallSet o) { bits_ |= o.bits_; return *this; }
    constexpr SmallSet& operator&=(SmallSet o) { bits_ &= o.bits_; return *this; }

    constexpr bool operator==(const SmallSet&) const = default;
    constexpr bool operator<(SmallSet o) const { return bits_ < o.bits_; }

    /// Lowest element, or -1 when empty.
    constexpr int first() const { return bits_ ? std::countr_zero(bits_) : -1; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::uint64_t b = bits_;
        while (b) {
            fn(std::countr_zero(b));
            b &= b - 1;
        }
    }

    /// "{u0,u2}"-style rendering with the given element prefix.
    std::string to_string(char prefix) const {
        std::string out = "{";
        bool sep = false;
        for_each([&](int i) {
            if (sep) out += ',';
            out += prefix;
            out += std::to_string(i);
            sep = true;
        });
        out += '}';
        return out;
    }

  private:
    std::uint64_t bits_ = 0;
};

using FileSet = SmallSet;
using UserSet = SmallSet;

} // namespace cranidnc
