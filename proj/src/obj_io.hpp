#pragma once

#include <string>

#include "mesh.hpp"

namespace seamless {

// Loads a triangle OBJ (v/f lines; vt ignored unless with_uv). With with_uv,
// one mesh vertex is created per distinct v/vt wedge, `orig` is the v index,
// and `uv` is filled, so a mesh saved with save_obj_uv round-trips including
// its cuts.
Mesh load_obj(const std::string& path, bool with_uv = false);

// Writes one `v` line per geometric id, one `vt` per mesh vertex, faces as
// v/vt references. Requires uv to be present.
void save_obj_uv(const Mesh& m, const std::string& path);

// vt_index[v] after save_obj_uv: mesh vertex order, 1-based in the file.
}  // namespace seamless
