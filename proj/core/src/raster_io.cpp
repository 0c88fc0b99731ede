// Copyright 2026 The zonerec Authors.
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

#include "zonerec/raster_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

namespace zonerec {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), s.rbegin(),
                    [](char a, char b) {
                      return std::tolower(static_cast<unsigned char>(a)) ==
                             std::tolower(static_cast<unsigned char>(b));
                    });
}

int pgm_next_int(std::istream& in) {
  // Skips whitespace and '#' comments per the netpbm grammar.
  while (true) {
    const int ch = in.peek();
    if (ch == EOF) throw InputError("pgm: unexpected end of header");
    if (ch == '#') {
      std::string line;
      std::getline(in, line);
      continue;
    }
    if (std::isspace(ch)) {
      in.get();
      continue;
    }
    break;
  }
  int value = 0;
  in >> value;
  if (!in) throw InputError("pgm: malformed header");
  return value;
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

RasterImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (magic[0] != 'P' || magic[1] != '5')
    throw InputError(path + ": not a binary PGM (P5)");
  const int w = pgm_next_int(in);
  const int h = pgm_next_int(in);
  const int maxval = pgm_next_int(in);
  if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
    throw InputError(path + ": unsupported PGM geometry");
  in.get();  // single whitespace after maxval
  RasterImage img(w, h, 0);
  in.read(reinterpret_cast<char*>(img.samples.data()),
          static_cast<std::streamsize>(img.samples.size()));
  if (!in) throw InputError(path + ": truncated PGM data");
  return img;
}

void write_pgm(const std::string& path, const RasterImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
  if (!out) throw InputError("write failed: " + path);
}

RasterImage read_png_gray(const std::string& path) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw InputError("cannot open " + path);

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw InputError("png: allocation failure");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw InputError("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError(path + ": PNG decode error");
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_set_strip_16(png);
  png_set_strip_alpha(png);
  const int color = png_get_color_type(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color & PNG_COLOR_MASK_COLOR || color == PNG_COLOR_TYPE_PALETTE)
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  if (png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  RasterImage img(w, h, 0);
  std::vector<png_bytep> rows(h);
  for (int r = 0; r < h; ++r)
    rows[r] = img.samples.data() + static_cast<size_t>(r) * w;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

void write_png_gray(const std::string& path, const RasterImage& img) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw InputError("cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    throw InputError("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw InputError(path + ": PNG encode error");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = 0; r < img.height; ++r)
    png_write_row(png, const_cast<png_bytep>(
        img.samples.data() + static_cast<size_t>(r) * img.width));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

RasterImage read_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw InputError("cannot open " + path);
  char head[2] = {0, 0};
  probe.read(head, 2);
  probe.close();
  if (head[0] == 'P' && head[1] == '5') return read_pgm(path);
  return read_png_gray(path);
}

void write_image(const std::string& path, const RasterImage& img) {
  if (ends_with(path, ".png"))
    write_png_gray(path, img);
  else
    write_pgm(path, img);
}

OverlayImage overlay_from_binary(const BinaryImage& bin) {
  OverlayImage out(bin.width, bin.height, overlay_colors::kBackground);
  for (int r = 0; r < bin.height; ++r)
    for (int c = 0; c < bin.width; ++c)
      if (bin.get(r, c)) out.set(r, c, overlay_colors::kInk);
  return out;
}

void write_png_rgb(const std::string& path, const OverlayImage& img) {
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw InputError("cannot write " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    throw InputError("png: allocation failure");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw InputError(path + ": PNG encode error");
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<std::uint8_t> row(static_cast<size_t>(img.width) * 3);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const Rgb px = img.pixels[static_cast<size_t>(r) * img.width + c];
      row[3 * c + 0] = px.r;
      row[3 * c + 1] = px.g;
      row[3 * c + 2] = px.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace zonerec
