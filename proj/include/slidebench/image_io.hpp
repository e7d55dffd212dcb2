#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "slidebench/imaging.hpp"

namespace slidebench::image_io {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes PNG or JPEG by content sniffing. Alpha is composited over white.
imaging::SlideImage read_image(const std::filesystem::path& path);

/// 8-bit RGB PNG writer, used for sample decks and debugging.
void write_png(const imaging::SlideImage& image, const std::filesystem::path& path);

}  // namespace slidebench::image_io
