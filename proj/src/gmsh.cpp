// SPDX-License-Identifier: Apache-2.0
#include <dec/mesh_gen.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace dec {

namespace {

std::string trimmed(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void expect_end(std::istream& in, const std::string& tag)
{
    std::string line;
    while (std::getline(in, line)) {
        const auto t = trimmed(line);
        if (t.empty()) continue;
        if (t == tag) return;
        throw Error(ErrorCode::MalformedSection, "expected " + tag + ", found '" + t + "'");
    }
    throw Error(ErrorCode::MalformedSection, "missing " + tag);
}

} // namespace

SimplicialComplex2 import_gmsh(std::istream& in)
{
    bool have_format = false;
    std::vector<long> node_ids;
    std::vector<Point2> nodes;
    std::vector<double> zs;
    std::vector<std::array<long, 3>> tris;
    bool have_nodes = false, have_elements = false;

    std::string line;
    while (std::getline(in, line)) {
        const auto tag = trimmed(line);
        if (tag.empty()) continue;
        if (tag == "$MeshFormat") {
            std::getline(in, line);
            std::istringstream ls(line);
            std::string version;
            int file_type = -1, data_size = 0;
            if (!(ls >> version >> file_type >> data_size)) {
                throw Error(ErrorCode::MalformedSection, "bad $MeshFormat line");
            }
            if (version.rfind("2.", 0) != 0) {
                throw Error(ErrorCode::UnsupportedVersion, "Gmsh format " + version + " is not 2.x");
            }
            if (file_type != 0) throw Error(ErrorCode::UnsupportedVersion, "binary Gmsh files are not supported");
            expect_end(in, "$EndMeshFormat");
            have_format = true;
        } else if (tag == "$Nodes") {
            long n = -1;
            if (!(in >> n) || n < 0) throw Error(ErrorCode::MalformedSection, "bad node count");
            node_ids.resize(n);
            nodes.resize(n);
            zs.resize(n);
            for (long i = 0; i < n; ++i) {
                if (!(in >> node_ids[i] >> nodes[i].x() >> nodes[i].y() >> zs[i])) {
                    throw Error(ErrorCode::MalformedSection, "truncated $Nodes section");
                }
            }
            std::getline(in, line);
            expect_end(in, "$EndNodes");
            have_nodes = true;
        } else if (tag == "$Elements") {
            long n = -1;
            if (!(in >> n) || n < 0) throw Error(ErrorCode::MalformedSection, "bad element count");
            std::getline(in, line);
            for (long i = 0; i < n; ++i) {
                if (!std::getline(in, line)) throw Error(ErrorCode::MalformedSection, "truncated $Elements section");
                std::istringstream ls(line);
                long id = 0, type = 0, ntags = 0;
                if (!(ls >> id >> type >> ntags) || ntags < 0) {
                    throw Error(ErrorCode::MalformedSection, "bad element line '" + trimmed(line) + "'");
                }
                for (long k = 0; k < ntags; ++k) {
                    long tagv;
                    if (!(ls >> tagv)) throw Error(ErrorCode::MalformedSection, "missing element tags");
                }
                if (type != 2) continue;
                std::array<long, 3> t{};
                if (!(ls >> t[0] >> t[1] >> t[2])) throw Error(ErrorCode::MalformedSection, "short triangle");
                tris.push_back(t);
            }
            expect_end(in, "$EndElements");
            have_elements = true;
        } else if (!tag.empty() && tag[0] == '$' && tag.rfind("$End", 0) != 0) {
            // Skip unknown sections such as $PhysicalNames.
            const std::string end = "$End" + tag.substr(1);
            bool closed = false;
            while (std::getline(in, line)) {
                if (trimmed(line) == end) {
                    closed = true;
                    break;
                }
            }
            if (!closed) throw Error(ErrorCode::MalformedSection, "missing " + end);
        } else {
            throw Error(ErrorCode::MalformedSection, "unexpected line '" + tag + "'");
        }
    }
    if (!have_format) throw Error(ErrorCode::MalformedSection, "missing $MeshFormat");
    if (!have_nodes || !have_elements) throw Error(ErrorCode::MalformedSection, "missing $Nodes or $Elements");
    if (tris.empty()) throw Error(ErrorCode::NoTriangles, "file has no 3-node triangles");

    for (double z : zs) {
        if (std::abs(z) > 1e-9) throw Error(ErrorCode::NonPlanarMesh, "node with z = " + std::to_string(z));
    }

    // Keep only nodes referenced by triangles, in file order.
    std::unordered_map<long, int> position;
    for (std::size_t i = 0; i < node_ids.size(); ++i) position[node_ids[i]] = static_cast<int>(i);
    std::vector<int> remap(nodes.size(), -1);
    std::vector<Point2> verts;
    std::vector<std::array<int, 3>> out;
    out.reserve(tris.size());
    for (const auto& t : tris) {
        std::array<int, 3> tri{};
        for (int k = 0; k < 3; ++k) {
            auto it = position.find(t[k]);
            if (it == position.end()) {
                throw Error(ErrorCode::IndexOutOfRange, "triangle references unknown node " + std::to_string(t[k]));
            }
            int& r = remap[it->second];
            if (r < 0) {
                r = static_cast<int>(verts.size());
                verts.push_back(nodes[it->second]);
            }
            tri[k] = r;
        }
        out.push_back(tri);
    }
    return build_complex(std::move(verts), std::move(out));
}

SimplicialComplex2 import_gmsh_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return import_gmsh(in);
}

} // namespace dec
