#include "specimeta/digest.hpp"

#include <openssl/sha.h>

namespace specimeta {

std::array<std::uint8_t, 32> sha256(std::string_view data) {
    std::array<std::uint8_t, 32> out{};
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(),
           out.data());
    return out;
}

std::string sha256_hex(std::string_view data) {
    static constexpr char hex[] = "0123456789abcdef";
    auto d = sha256(data);
    std::string out;
    out.reserve(64);
    for (auto b : d) {
        out += hex[b >> 4];
        out += hex[b & 0xf];
    }
    return out;
}

}  // namespace specimeta
