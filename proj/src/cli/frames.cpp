#include "nsg/frames.hpp"

#include <cstdio>

namespace nsg {

FrameFormat parse_frame_format(std::string_view token) {
  if (token == "pbm-ascii") return FrameFormat::pbm_ascii;
  if (token == "pbm-binary") return FrameFormat::pbm_binary;
  throw ParseError("unknown frame format token: " + std::string(token));
}

std::string_view to_token(FrameFormat format) {
  return format == FrameFormat::pbm_ascii ? "pbm-ascii" : "pbm-binary";
}

std::string_view frame_extension(FrameFormat) { return ".pbm"; }

std::string export_frame(const Grid& g, FrameFormat format) {
  std::string out;
  out += format == FrameFormat::pbm_ascii ? "P1\n" : "P4\n";
  out += std::to_string(g.cols()) + " " + std::to_string(g.rows()) + "\n";
  if (format == FrameFormat::pbm_ascii) {
    for (int r = 0; r < g.rows(); ++r) {
      for (int c = 0; c < g.cols(); ++c) {
        if (c > 0) out.push_back(' ');
        out.push_back(g.at(r, c) ? '1' : '0');
      }
      out.push_back('\n');
    }
  } else {
    const std::vector<std::uint8_t> packed = pack_grid_bits(g);
    out.append(reinterpret_cast<const char*>(packed.data()), packed.size());
  }
  return out;
}

std::string frame_filename(int step_index, FrameFormat format) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06d", step_index);
  return std::string(buf) + std::string(frame_extension(format));
}

}  // namespace nsg
