#pragma once

#include <string>
#include <string_view>

#include "nsg/lattice.hpp"

namespace nsg {

enum class FrameFormat { pbm_ascii, pbm_binary };

FrameFormat parse_frame_format(std::string_view token);  // "pbm-ascii" | "pbm-binary"
std::string_view to_token(FrameFormat format);
std::string_view frame_extension(FrameFormat format);  // ".pbm" for both

// P1: "P1\n<cols> <rows>\n" then one line per row of space-separated 0/1.
// P4: "P4\n<cols> <rows>\n" then row-major bit-packed rows, each padded to a
// byte boundary, MSB first, 1 = type-1 cell.
std::string export_frame(const Grid& g, FrameFormat format);

// Zero-padded so lexicographic order equals temporal order.
std::string frame_filename(int step_index, FrameFormat format);

}  // namespace nsg
