#include "prmatte/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace prmatte {

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

uint16_t to_u16(double v) {
  return uint16_t(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
}
uint8_t to_u8(double v) { return uint8_t(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); }

void write_png_impl(const std::string& path, const Plane* gray, const Image* rgb, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16) throw ParamError("write_png: bit depth must be 8 or 16");
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("write_png: cannot open " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info) throw IoError("write_png: libpng init failed");
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("write_png: libpng error writing " + path);
  }
  png_init_io(png, fp.get());

  const auto h = gray ? gray->rows() : rgb->rows();
  const auto w = gray ? gray->cols() : rgb->cols();
  const int channels = gray ? 1 : 3;
  png_set_IHDR(png, info, png_uint_32(w), png_uint_32(h), bit_depth,
               gray ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<uint8_t> row(size_t(w) * size_t(channels) * size_t(bit_depth / 8));
  for (Eigen::Index y = 0; y < h; ++y) {
    size_t i = 0;
    for (Eigen::Index x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double v = gray ? (*gray)(y, x) : (*rgb)[c](y, x);
        if (bit_depth == 16) {
          const uint16_t u = to_u16(v);
          row[i++] = uint8_t(u >> 8);  // PNG is big-endian
          row[i++] = uint8_t(u & 0xff);
        } else {
          row[i++] = to_u8(v);
        }
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png_gray(const std::string& path, const Plane& plane, int bit_depth) {
  write_png_impl(path, &plane, nullptr, bit_depth);
}

void write_png_rgb(const std::string& path, const Image& image, int bit_depth) {
  write_png_impl(path, nullptr, &image, bit_depth);
}

PngContents read_png(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IoError("read_png: cannot open " + path);

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (!png || !info) throw IoError("read_png: libpng init failed");
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("read_png: libpng error reading " + path);
  }
  png_init_io(png, fp.get());
  png_read_info(png, info);

  const auto w = Eigen::Index(png_get_image_width(png, info));
  const auto h = Eigen::Index(png_get_image_height(png, info));
  int bit_depth = png_get_bit_depth(png, info);
  int color_type = png_get_color_type(png, info);

  // Normalize exotic layouts to 8/16-bit gray or RGB.
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  bit_depth = png_get_bit_depth(png, info);
  color_type = png_get_color_type(png, info);
  const int channels = (color_type == PNG_COLOR_TYPE_GRAY) ? 1 : 3;
  if (color_type != PNG_COLOR_TYPE_GRAY && color_type != PNG_COLOR_TYPE_RGB) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("read_png: unsupported color type in " + path);
  }

  PngContents out;
  out.channels = channels;
  out.bit_depth = bit_depth;
  if (channels == 1) out.gray = Plane(h, w);
  else out.rgb = Image(h, w);

  const double denom = (bit_depth == 16) ? 65535.0 : 255.0;
  std::vector<uint8_t> row(size_t(w) * size_t(channels) * size_t(bit_depth / 8));
  for (Eigen::Index y = 0; y < h; ++y) {
    png_read_row(png, row.data(), nullptr);
    size_t i = 0;
    for (Eigen::Index x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        double v;
        if (bit_depth == 16) {
          const uint16_t u = uint16_t((uint16_t(row[i]) << 8) | row[i + 1]);
          i += 2;
          v = double(u) / denom;
        } else {
          v = double(row[i++]) / denom;
        }
        if (channels == 1) out.gray(y, x) = v;
        else out.rgb[c](y, x) = v;
      }
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

Plane read_png_gray(const std::string& path) {
  PngContents c = read_png(path);
  if (c.channels == 1) return c.gray;
  return ((c.rgb[0] + c.rgb[1] + c.rgb[2]) / 3.0).eval();
}

Image read_png_rgb(const std::string& path) {
  PngContents c = read_png(path);
  if (c.channels == 3) return c.rgb;
  Image img;
  for (int i = 0; i < 3; ++i) img[i] = c.gray;
  return img;
}

namespace {

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  std::longjmp(mgr->jump, 1);
}

}  // namespace

Image jpeg_roundtrip(const Image& image, int quality) {
  if (quality < 1 || quality > 100) throw ParamError("jpeg_roundtrip: quality must be in [1,100]");
  const auto h = image.rows();
  const auto w = image.cols();

  std::vector<uint8_t> rgb(size_t(h) * size_t(w) * 3);
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) rgb[(size_t(y) * size_t(w) + size_t(x)) * 3 + size_t(c)] = to_u8(image[c](y, x));

  // Encode.
  jpeg_compress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.pub);
  jerr.pub.error_exit = jpeg_error_exit;
  unsigned char* buf = nullptr;
  unsigned long buf_size = 0;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_compress(&cinfo);
    free(buf);
    throw IoError("jpeg_roundtrip: encode failed");
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &buf, &buf_size);
  cinfo.image_width = JDIMENSION(w);
  cinfo.image_height = JDIMENSION(h);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  // 4:4:4 so high qualities stay near-lossless on sharp color edges.
  for (int c = 0; c < cinfo.num_components; ++c) {
    cinfo.comp_info[c].h_samp_factor = 1;
    cinfo.comp_info[c].v_samp_factor = 1;
  }
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW rowp = &rgb[size_t(cinfo.next_scanline) * size_t(w) * 3];
    jpeg_write_scanlines(&cinfo, &rowp, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);

  // Decode.
  jpeg_decompress_struct dinfo;
  JpegErrorMgr derr;
  dinfo.err = jpeg_std_error(&derr.pub);
  derr.pub.error_exit = jpeg_error_exit;
  if (setjmp(derr.jump)) {
    jpeg_destroy_decompress(&dinfo);
    free(buf);
    throw IoError("jpeg_roundtrip: decode failed");
  }
  jpeg_create_decompress(&dinfo);
  jpeg_mem_src(&dinfo, buf, buf_size);
  jpeg_read_header(&dinfo, TRUE);
  dinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&dinfo);

  Image out(h, w);
  std::vector<uint8_t> row(size_t(w) * 3);
  Eigen::Index y = 0;
  while (dinfo.output_scanline < dinfo.output_height) {
    JSAMPROW rowp = row.data();
    jpeg_read_scanlines(&dinfo, &rowp, 1);
    for (Eigen::Index x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) out[c](y, x) = double(row[size_t(x) * 3 + size_t(c)]) / 255.0;
    ++y;
  }
  jpeg_finish_decompress(&dinfo);
  jpeg_destroy_decompress(&dinfo);
  free(buf);
  return out;
}

}  // namespace prmatte
