#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jsrehab {

enum class Encoding { Identity, Gzip, Brotli };

class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "identity", "gzip" or "brotli".
std::string_view encoding_name(Encoding e);
/// Content-Encoding token as sent on the wire ("", "gzip", "br").
std::string_view content_encoding_token(Encoding e);
/// Maps a Content-Encoding header value; nullopt for codings we cannot decode.
std::optional<Encoding> parse_content_encoding(std::string_view header);

inline constexpr int kDefaultGzipLevel = 6;
inline constexpr int kDefaultBrotliQuality = 5;

/// Deterministic encoders: gzip carries no timestamp or file name.
std::string compress(std::string_view data, Encoding e, int level = -1);
std::string decompress(std::string_view data, Encoding e, std::size_t max_output = 256u << 20);

}  // namespace jsrehab
