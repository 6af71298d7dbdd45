#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "xfem/mesh.hpp"

namespace xfem {

/// Parses an `xfem-mesh 1` document. Errors carry the offending line or
/// element id.
Mesh load_mesh(std::string_view document);
Mesh load_mesh_file(const std::filesystem::path& path);

/// Serializes a mesh in the same format, full double precision.
std::string write_mesh(const Mesh& mesh);
void write_mesh_file(const Mesh& mesh, const std::filesystem::path& path);

}  // namespace xfem
