// Copyright 2026 The qlayerwise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlw/data/idx.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <type_traits>
#include <string>

#include "qlw/errors.hpp"

namespace qlw::data {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

struct GzCloser {
    void operator()(gzFile f) const noexcept { gzclose(f); }
};
using GzHandle = std::unique_ptr<std::remove_pointer_t<gzFile>, GzCloser>;

// gzread passes uncompressed files through unchanged, so one reader handles both.
class ByteReader {
  public:
    explicit ByteReader(const std::filesystem::path &path) : path_(path) {
        handle_.reset(gzopen(path.c_str(), "rb"));
        if (!handle_) {
            throw ParseError("cannot open " + path.string());
        }
    }

    void read(void *dst, std::size_t count, const char *what) {
        std::size_t done = 0;
        auto *out = static_cast<unsigned char *>(dst);
        while (done < count) {
            const auto chunk = static_cast<unsigned>(std::min<std::size_t>(count - done, 1u << 30));
            const int got = gzread(handle_.get(), out + done, chunk);
            if (got < 0) {
                throw ParseError(path_.string() + ": read error at byte offset " +
                                 std::to_string(offset_ + done));
            }
            if (got == 0) {
                throw ParseError(path_.string() + ": truncated while reading " + what +
                                 " at byte offset " + std::to_string(offset_ + done) +
                                 ": expected " + std::to_string(offset_ + count) +
                                 " bytes, file ends after " + std::to_string(offset_ + done));
            }
            done += static_cast<std::size_t>(got);
        }
        offset_ += count;
    }

    std::uint32_t read_u32(const char *what) {
        unsigned char b[4];
        read(b, 4, what);
        return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
               (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
    }

    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

  private:
    std::filesystem::path path_;
    GzHandle handle_;
    std::size_t offset_ = 0;
};

std::string hex(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", v);
    return buf;
}

void put_u32(std::string &out, std::uint32_t v) {
    out.push_back(static_cast<char>(v >> 24));
    out.push_back(static_cast<char>(v >> 16));
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v));
}

void write_bytes(const std::filesystem::path &path, const std::string &bytes, bool compress) {
    GzHandle f(gzopen(path.c_str(), compress ? "wb9" : "wbT"));
    if (!f) {
        throw ParseError("cannot write " + path.string());
    }
    if (!bytes.empty() &&
        gzwrite(f.get(), bytes.data(), static_cast<unsigned>(bytes.size())) !=
            static_cast<int>(bytes.size())) {
        throw ParseError("short write to " + path.string());
    }
}

} // namespace

RawDataset load_idx(const std::filesystem::path &images, const std::filesystem::path &labels) {
    RawDataset out;

    ByteReader img(images);
    if (const auto magic = img.read_u32("magic"); magic != kImageMagic) {
        throw ParseError(images.string() + ": bad magic " + hex(magic) + " at byte offset 0, " +
                         "expected " + hex(kImageMagic));
    }
    const std::size_t n_images = img.read_u32("image count");
    out.rows = img.read_u32("row count");
    out.cols = img.read_u32("column count");
    out.pixels.resize(n_images * out.rows * out.cols);
    img.read(out.pixels.data(), out.pixels.size(), "pixels");

    ByteReader lab(labels);
    if (const auto magic = lab.read_u32("magic"); magic != kLabelMagic) {
        throw ParseError(labels.string() + ": bad magic " + hex(magic) + " at byte offset 0, " +
                         "expected " + hex(kLabelMagic));
    }
    const std::size_t n_labels = lab.read_u32("label count");
    if (n_labels != n_images) {
        throw ParseError(labels.string() + ": label count " + std::to_string(n_labels) +
                         " at byte offset 4 does not match image count " +
                         std::to_string(n_images));
    }
    out.labels.resize(n_labels);
    lab.read(out.labels.data(), out.labels.size(), "labels");
    return out;
}

void write_idx(const RawDataset &data, const std::filesystem::path &images,
               const std::filesystem::path &labels, bool compress) {
    std::string img;
    put_u32(img, kImageMagic);
    put_u32(img, static_cast<std::uint32_t>(data.size()));
    put_u32(img, static_cast<std::uint32_t>(data.rows));
    put_u32(img, static_cast<std::uint32_t>(data.cols));
    img.append(data.pixels.begin(), data.pixels.end());
    write_bytes(images, img, compress);

    std::string lab;
    put_u32(lab, kLabelMagic);
    put_u32(lab, static_cast<std::uint32_t>(data.size()));
    lab.append(data.labels.begin(), data.labels.end());
    write_bytes(labels, lab, compress);
}

} // namespace qlw::data
