#pragma once

// Shared test helpers: make Catch2 able to print 128-bit values.

#include <ostream>
#include <utility>

#include "goldscan/int128.hpp"

inline std::ostream& operator<<(std::ostream& os, __int128 v) { return os << goldscan::to_string(v); }
inline std::ostream& operator<<(std::ostream& os, unsigned __int128 v) {
    return os << goldscan::to_string((goldscan::i128)v);
}

template <class A, class B>
std::ostream& operator<<(std::ostream& os, const std::pair<A, B>& p) {
    os << "(" << p.first << ", " << p.second << ")";
    return os;
}
