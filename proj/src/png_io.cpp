#include <png.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "elastica/imaging.hpp"

namespace elastica {

ColorField read_png(const std::string& path) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw std::runtime_error("cannot read PNG " + path + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
    const std::string msg = img.message;
    png_image_free(&img);
    throw std::runtime_error("cannot decode PNG " + path + ": " + msg);
  }
  const int rows = static_cast<int>(img.height);
  const int cols = static_cast<int>(img.width);
  ColorField out{Grid(rows, cols)};
  for (std::size_t pix = 0; pix < out.grid().size(); ++pix) {
    for (int k = 0; k < 3; ++k) out[k][pix] = from_byte(buf[3 * pix + k]);
  }
  return out;
}

void write_png(const std::string& path, const ColorField& image) {
  const Grid& grid = image.grid();
  std::vector<png_byte> buf(3 * grid.size());
  for (std::size_t pix = 0; pix < grid.size(); ++pix) {
    for (int k = 0; k < 3; ++k) buf[3 * pix + k] = to_byte(image[k][pix]);
  }
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(grid.cols());
  img.height = static_cast<png_uint_32>(grid.rows());
  img.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&img, path.c_str(), 0, buf.data(), 0, nullptr)) {
    throw std::runtime_error("cannot write PNG " + path + ": " + img.message);
  }
}

}  // namespace elastica
