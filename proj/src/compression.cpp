#include "jsrehab/compression.hpp"

#include <brotli/decode.h>
#include <brotli/encode.h>
#include <zlib.h>

#include "strings.hpp"

namespace jsrehab {

namespace {

std::string gzip(std::string_view data, int level)
{
    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");
    std::string out;
    out.resize(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    auto produced = zs.total_out;
    deflateEnd(&zs);
    if (rc != Z_STREAM_END)
        throw std::runtime_error("gzip compression did not finish");
    out.resize(produced);
    return out;
}

std::string gunzip(std::string_view data, std::size_t max_output)
{
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 32) != Z_OK)
        throw DecodeError("inflateInit2 failed");
    std::string out;
    char buf[64 * 1024];
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    int rc = Z_OK;
    while (true) {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof buf;
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw DecodeError(std::string("gzip stream is corrupt: ") + (zs.msg ? zs.msg : "error " + std::to_string(rc)));
        }
        out.append(buf, sizeof buf - zs.avail_out);
        if (out.size() > max_output) {
            inflateEnd(&zs);
            throw DecodeError("decoded body exceeds size limit");
        }
        if (rc == Z_STREAM_END) {
            // Concatenated members are legal gzip.
            if (zs.avail_in > 0 && inflateReset(&zs) == Z_OK)
                continue;
            break;
        }
        if (zs.avail_in == 0 && zs.avail_out != 0) {
            inflateEnd(&zs);
            throw DecodeError("gzip stream is truncated");
        }
    }
    inflateEnd(&zs);
    return out;
}

std::string brotli(std::string_view data, int quality)
{
    std::size_t size = BrotliEncoderMaxCompressedSize(data.size());
    if (size == 0)
        size = data.size() + 1024;
    std::string out(size, '\0');
    if (!BrotliEncoderCompress(quality, BROTLI_DEFAULT_WINDOW, BROTLI_MODE_TEXT, data.size(),
                               reinterpret_cast<const uint8_t*>(data.data()), &size, reinterpret_cast<uint8_t*>(out.data())))
        throw std::runtime_error("brotli compression failed");
    out.resize(size);
    return out;
}

std::string unbrotli(std::string_view data, std::size_t max_output)
{
    BrotliDecoderState* st = BrotliDecoderCreateInstance(nullptr, nullptr, nullptr);
    if (!st)
        throw DecodeError("cannot create brotli decoder");
    std::string out;
    const uint8_t* next_in = reinterpret_cast<const uint8_t*>(data.data());
    std::size_t avail_in = data.size();
    uint8_t buf[64 * 1024];
    BrotliDecoderResult rc;
    do {
        uint8_t* next_out = buf;
        std::size_t avail_out = sizeof buf;
        rc = BrotliDecoderDecompressStream(st, &avail_in, &next_in, &avail_out, &next_out, nullptr);
        out.append(reinterpret_cast<char*>(buf), sizeof buf - avail_out);
        if (out.size() > max_output) {
            BrotliDecoderDestroyInstance(st);
            throw DecodeError("decoded body exceeds size limit");
        }
        if (rc == BROTLI_DECODER_RESULT_NEEDS_MORE_INPUT) {
            BrotliDecoderDestroyInstance(st);
            throw DecodeError("brotli stream is truncated");
        }
    } while (rc == BROTLI_DECODER_RESULT_NEEDS_MORE_OUTPUT);
    if (rc != BROTLI_DECODER_RESULT_SUCCESS) {
        std::string why = BrotliDecoderErrorString(BrotliDecoderGetErrorCode(st));
        BrotliDecoderDestroyInstance(st);
        throw DecodeError("brotli stream is corrupt: " + why);
    }
    BrotliDecoderDestroyInstance(st);
    return out;
}

}  // namespace

std::string_view encoding_name(Encoding e)
{
    switch (e) {
    case Encoding::Identity:
        return "identity";
    case Encoding::Gzip:
        return "gzip";
    case Encoding::Brotli:
        return "brotli";
    }
    return "identity";
}

std::string_view content_encoding_token(Encoding e)
{
    switch (e) {
    case Encoding::Identity:
        return "";
    case Encoding::Gzip:
        return "gzip";
    case Encoding::Brotli:
        return "br";
    }
    return "";
}

std::optional<Encoding> parse_content_encoding(std::string_view header)
{
    auto v = detail::to_lower(detail::trim(header));
    if (v.empty() || v == "identity")
        return Encoding::Identity;
    if (v == "gzip" || v == "x-gzip")
        return Encoding::Gzip;
    if (v == "br")
        return Encoding::Brotli;
    return std::nullopt;
}

std::string compress(std::string_view data, Encoding e, int level)
{
    switch (e) {
    case Encoding::Identity:
        return std::string(data);
    case Encoding::Gzip:
        return gzip(data, level < 0 ? kDefaultGzipLevel : level);
    case Encoding::Brotli:
        return brotli(data, level < 0 ? kDefaultBrotliQuality : level);
    }
    return std::string(data);
}

std::string decompress(std::string_view data, Encoding e, std::size_t max_output)
{
    switch (e) {
    case Encoding::Identity:
        return std::string(data);
    case Encoding::Gzip:
        return gunzip(data, max_output);
    case Encoding::Brotli:
        return unbrotli(data, max_output);
    }
    return std::string(data);
}

}  // namespace jsrehab
