#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "snug/common.hpp"

namespace snug {

struct MaterialParams;  // materials.hpp

/// Triangle mesh with an intrinsic 2D rest configuration per vertex.
/// Positions are meters; rest_uv is the flat-pattern position, also meters.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec2> rest_uv;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }

  void validate() const {
    const int n = vertex_count();
    if (rest_uv.size() != vertices.size())
      throw MeshError("rest_uv count does not match vertex count");
    std::set<std::array<int, 3>> seen;
    for (size_t f = 0; f < faces.size(); ++f) {
      const auto& tri = faces[f];
      for (int k = 0; k < 3; ++k)
        if (tri[k] < 0 || tri[k] >= n)
          throw MeshError("face " + std::to_string(f) + " index out of range");
      if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
        throw MeshError("face " + std::to_string(f) + " has repeated vertices");
      std::array<int, 3> key = tri;
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second)
        throw MeshError("duplicate face " + std::to_string(f));
    }
  }
};

/// An interior edge with its two opposite vertices. Orientation (v0 -> v1)
/// follows the winding of face_a; face_b traverses the edge the other way.
struct DihedralEdge {
  int v0, v1;      // shared edge
  int v_opp_a;     // third vertex of face_a
  int v_opp_b;     // third vertex of face_b
  int face_a, face_b;
};

/// Everything about the rest configuration that the energies need,
/// precomputed once per (mesh, material) pair.
struct RestState {
  std::vector<Mat2> inv_rest_edges;       // per face, inverse of [X1-X0 | X2-X0]
  std::vector<double> face_area;          // m^2, in rest_uv
  std::vector<double> face_volume;        // m^3, area * thickness
  std::vector<DihedralEdge> dihedral_edges;
  std::vector<double> vertex_mass;        // kg, lumped
  std::vector<double> vertex_area;        // m^2, one third of incident face area
  double total_mass = 0.0;

  int vertex_count() const { return static_cast<int>(vertex_mass.size()); }
};

namespace detail {

// Interior edges with consistent winding: each appears once as (i->j) in one
// face and once as (j->i) in the other.
inline std::vector<DihedralEdge> collect_dihedral_edges(const TriMesh& mesh) {
  struct HalfEdge {
    int face;
    int opp;
  };
  std::map<std::pair<int, int>, HalfEdge> half;  // directed edge -> face info
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& tri = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k], b = tri[(k + 1) % 3], c = tri[(k + 2) % 3];
      auto [it, inserted] = half.emplace(std::make_pair(a, b), HalfEdge{f, c});
      if (!inserted)
        throw MeshError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                        ") appears twice with the same orientation; mesh is not a "
                        "consistently wound manifold");
      (void)it;
    }
  }
  std::vector<DihedralEdge> edges;
  for (const auto& [key, he] : half) {
    const auto [a, b] = key;
    if (a > b) continue;  // visit each undirected edge once
    auto twin = half.find(std::make_pair(b, a));
    if (twin == half.end()) continue;  // boundary edge
    edges.push_back(DihedralEdge{a, b, he.opp, twin->second.opp, he.face, twin->second.face});
  }
  return edges;
}

}  // namespace detail

/// Builds the rest-state quantities. Masses use the one-third area rule:
/// m_i = density * thickness * (1/3) * sum of incident rest areas.
inline RestState precompute_rest_state(const TriMesh& mesh, double density, double thickness) {
  mesh.validate();
  RestState rest;
  const int nf = mesh.face_count();
  const int nv = mesh.vertex_count();
  rest.inv_rest_edges.resize(nf);
  rest.face_area.resize(nf);
  rest.face_volume.resize(nf);
  rest.vertex_mass.assign(nv, 0.0);
  rest.vertex_area.assign(nv, 0.0);

  for (int f = 0; f < nf; ++f) {
    const auto& tri = mesh.faces[f];
    const Vec2& u0 = mesh.rest_uv[tri[0]];
    Mat2 dm;
    dm.col(0) = mesh.rest_uv[tri[1]] - u0;
    dm.col(1) = mesh.rest_uv[tri[2]] - u0;
    const double det = dm.determinant();
    if (std::abs(det) < 1e-12)
      throw DegenerateFaceError(f, "rest-edge matrix is singular");
    rest.inv_rest_edges[f] = dm.inverse();
    rest.face_area[f] = 0.5 * std::abs(det);
    rest.face_volume[f] = rest.face_area[f] * thickness;
    for (int k = 0; k < 3; ++k) rest.vertex_area[tri[k]] += rest.face_area[f] / 3.0;
  }
  for (int i = 0; i < nv; ++i) rest.vertex_mass[i] = density * thickness * rest.vertex_area[i];
  rest.total_mass = 0.0;
  for (double m : rest.vertex_mass) rest.total_mass += m;

  rest.dihedral_edges = detail::collect_dihedral_edges(mesh);
  return rest;
}

RestState precompute_rest_state(const TriMesh& mesh, const MaterialParams& mat);

// ---------------------------------------------------------------------------
// Wavefront OBJ. `v x y z` in meters, optional `vt u v` (meters, taken as the
// rest configuration), faces `f i j k` or `f i/ti j/tj k/tk`, 1-based.
// ---------------------------------------------------------------------------

struct LoadedMesh {
  TriMesh mesh;
  bool uv_from_projection = false;  // true when no vt records were present
};

namespace detail {

// Best-fit-plane projection used when a mesh ships without a flat pattern.
inline std::vector<Vec2> project_to_plane(const std::vector<Vec3>& verts) {
  Vec3 centroid = Vec3::Zero();
  for (const auto& v : verts) centroid += v;
  if (!verts.empty()) centroid /= static_cast<double>(verts.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& v : verts) {
    const Vec3 d = v - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  // Columns sorted by ascending eigenvalue; the two largest span the plane.
  const Vec3 axis_u = eig.eigenvectors().col(2);
  const Vec3 axis_v = eig.eigenvectors().col(1);
  std::vector<Vec2> uv(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    const Vec3 d = verts[i] - centroid;
    uv[i] = Vec2(axis_u.dot(d), axis_v.dot(d));
  }
  return uv;
}

struct ObjCorner {
  int v = -1;
  int vt = -1;
};

inline ObjCorner parse_corner(const std::string& token, int line_no) {
  ObjCorner c;
  const size_t s1 = token.find('/');
  try {
    if (s1 == std::string::npos) {
      c.v = std::stoi(token);
    } else {
      c.v = std::stoi(token.substr(0, s1));
      const size_t s2 = token.find('/', s1 + 1);
      const std::string t = (s2 == std::string::npos) ? token.substr(s1 + 1)
                                                      : token.substr(s1 + 1, s2 - s1 - 1);
      if (!t.empty()) c.vt = std::stoi(t);
    }
  } catch (const std::exception&) {
    throw ParseError(line_no, "bad face corner '" + token + "'");
  }
  return c;
}

}  // namespace detail

inline LoadedMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open OBJ file: " + path);

  std::vector<Vec3> positions;
  std::vector<Vec2> uvs;
  struct FaceRec {
    std::array<detail::ObjCorner, 3> c;
  };
  std::vector<FaceRec> face_recs;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x() >> p.y() >> p.z())) throw ParseError(line_no, "bad vertex record");
      positions.push_back(p);
    } else if (tag == "vt") {
      Vec2 t;
      if (!(ss >> t.x() >> t.y())) throw ParseError(line_no, "bad texture record");
      uvs.push_back(t);
    } else if (tag == "f") {
      std::vector<std::string> tokens;
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.size() != 3) throw NonTriangularFaceError(line_no);
      FaceRec rec;
      for (int k = 0; k < 3; ++k) rec.c[k] = detail::parse_corner(tokens[k], line_no);
      face_recs.push_back(rec);
    }
    // other records (vn, o, g, s, mtllib, ...) are ignored
  }

  const int nv = static_cast<int>(positions.size());
  LoadedMesh out;
  out.mesh.vertices = positions;

  const bool have_uv = !uvs.empty();
  // A position used with several distinct vt records gets split, so that
  // rest_uv stays a per-vertex quantity.
  std::map<std::pair<int, int>, int> remap;  // (v, vt) -> output vertex
  std::vector<int> plain_index(nv, -1);      // v without vt -> output vertex
  std::vector<Vec2> out_uv;
  if (have_uv) {
    out.mesh.vertices.clear();
  }

  for (const auto& rec : face_recs) {
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      int v = rec.c[k].v;
      int vt = rec.c[k].vt;
      if (v < 0) v = nv + v + 1;  // negative OBJ indices count from the end
      if (v < 1 || v > nv) throw ParseError(0, "vertex index out of range");
      if (!have_uv) {
        tri[k] = v - 1;
        continue;
      }
      if (vt < 0) vt = static_cast<int>(uvs.size()) + vt + 1;
      if (vt < 1 || vt > static_cast<int>(uvs.size()))
        throw ParseError(0, "texture index out of range");
      auto [it, inserted] = remap.emplace(std::make_pair(v, vt), -1);
      if (inserted) {
        it->second = static_cast<int>(out.mesh.vertices.size());
        out.mesh.vertices.push_back(positions[v - 1]);
        out_uv.push_back(uvs[vt - 1]);
      }
      tri[k] = it->second;
    }
    out.mesh.faces.push_back(tri);
  }

  if (have_uv) {
    out.mesh.rest_uv = std::move(out_uv);
  } else {
    out.mesh.rest_uv = detail::project_to_plane(out.mesh.vertices);
    out.uv_from_projection = true;
  }
  out.mesh.validate();
  return out;
}

inline void save_obj(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write OBJ file: " + path);
  char buf[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "v %.9g %.9g %.9g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  const bool have_uv = mesh.rest_uv.size() == mesh.vertices.size();
  if (have_uv) {
    for (const auto& t : mesh.rest_uv) {
      std::snprintf(buf, sizeof(buf), "vt %.9g %.9g\n", t.x(), t.y());
      out << buf;
    }
  }
  for (const auto& f : mesh.faces) {
    if (have_uv)
      std::snprintf(buf, sizeof(buf), "f %d/%d %d/%d %d/%d\n", f[0] + 1, f[0] + 1, f[1] + 1,
                    f[1] + 1, f[2] + 1, f[2] + 1);
    else
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out << buf;
  }
  if (!out) throw IoError("failed while writing OBJ file: " + path);
}

}  // namespace snug
