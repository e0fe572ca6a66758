#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <jpeglib.h>
#include <png.h>

#include "chromalex/errors.hpp"
#include "chromalex/imaging.hpp"
#include "chromalex/util.hpp"

namespace chromalex::imaging {
namespace {

bool looks_like_png(std::span<const unsigned char> bytes) {
  static const unsigned char sig[8] = {137, 80, 78, 71, 13, 10, 26, 10};
  return bytes.size() >= 8 && std::memcmp(bytes.data(), sig, 8) == 0;
}

bool looks_like_jpeg(std::span<const unsigned char> bytes) {
  return bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF;
}

ImageArray decode_png(std::span<const unsigned char> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;

  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw DecodeError(std::string("png: ") + image.message);
  }
  image.format = PNG_FORMAT_RGBA;

  std::vector<unsigned char> rgba(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw DecodeError("png: " + msg);
  }

  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  ImageArray out(w, h, PixelSpace::kSrgb);
  const unsigned char* src = rgba.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x, src += 4) {
      const unsigned a = src[3];
      for (int c = 0; c < 3; ++c) {
        // composite over white: c*a + 255*(1-a), integer-rounded
        const unsigned v = (src[c] * a + 255u * (255u - a) + 127u) / 255u;
        out.at(y, x, c) = static_cast<float>(v);
      }
    }
  }
  return out;
}

struct JpegErrorTrap {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_trampoline(j_common_ptr cinfo) {
  auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, trap->message);
  std::longjmp(trap->jump, 1);
}

ImageArray decode_jpeg(std::span<const unsigned char> bytes) {
  jpeg_decompress_struct cinfo;
  JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.pub);
  trap.pub.error_exit = jpeg_error_trampoline;

  ImageArray out;
  std::vector<unsigned char> row;

  if (setjmp(trap.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw DecodeError(std::string("jpeg: ") + trap.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  if (cinfo.output_components != 3) {
    jpeg_destroy_decompress(&cinfo);
    throw DecodeError("jpeg: unsupported component count");
  }

  out = ImageArray(w, h, PixelSpace::kSrgb);
  row.resize(static_cast<std::size_t>(w) * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    const int y = static_cast<int>(cinfo.output_scanline);
    JSAMPROW ptr = row.data();
    jpeg_read_scanlines(&cinfo, &ptr, 1);
    for (int x = 0; x < w; ++x) {
      out.at(y, x, 0) = row[x * 3 + 0];
      out.at(y, x, 1) = row[x * 3 + 1];
      out.at(y, x, 2) = row[x * 3 + 2];
    }
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

}  // namespace

ImageArray load_image(std::span<const unsigned char> bytes) {
  if (looks_like_png(bytes)) return decode_png(bytes);
  if (looks_like_jpeg(bytes)) return decode_jpeg(bytes);
  throw DecodeError("unsupported image format");
}

ImageArray load_image_file(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  try {
    return load_image(bytes);
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

std::vector<unsigned char> encode_png(const ImageArray& img) {
  if (img.space() != PixelSpace::kSrgb) {
    throw Error("encode_png expects an sRGB image");
  }
  std::vector<unsigned char> rgb(img.pixel_count() * 3);
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    rgb[i] = static_cast<unsigned char>(px[i]);
  }

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, rgb.data(), 0, nullptr)) {
    throw Error(std::string("png encode: ") + image.message);
  }
  std::vector<unsigned char> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, rgb.data(), 0, nullptr)) {
    throw Error(std::string("png encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

void save_png(const ImageArray& img, const std::filesystem::path& path) {
  write_file_atomic(path, encode_png(img));
}

}  // namespace chromalex::imaging
