#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gqlab/constructions.hpp"
#include "gqlab/geometry.hpp"
#include "gqlab/group.hpp"
#include "gqlab/symmetry.hpp"

namespace gqlab {

// 64-bit FNV-1a over a byte range; hashes render as 16 hex digits.
uint64_t fnv1a(const void* data, std::size_t len,
               uint64_t seed = 14695981039346656037ull);
std::string hash_hex(uint64_t h);
uint64_t file_hash(const std::string& path);

// Existing files are never overwritten unless force is set; violations
// throw IoError, as do all parse failures (with line context).
void write_text_file(const std::string& path, const std::string& content, bool force = false);
std::string read_text_file(const std::string& path);

// Group file: "group <n>", n rows of the multiplication table, optional
// "label <index> <text>" trailers. Identity must be element 0.
// group_text renders the exact file content, for hashing round-trips.
std::string group_text(const group_table& g);
void write_group(const std::string& path, const group_table& g, bool force = false);
group_table read_group(const std::string& path);

// Geometry file: "geometry <P> <L>", L rows of ascending point indices,
// optional "tag point <i> <text>" / "tag line <j> <text>" trailers.
std::string geometry_text(const incidence_geometry& geo);
void write_geometry(const std::string& path, const incidence_geometry& geo, bool force = false);
incidence_geometry read_geometry(const std::string& path);

// Family file: "kantor <group-file> <t+1>", then per member a line
// "E<i>: <indices>" and a line "E<i>*: <indices>". The group file is
// stored as written; on read a relative path resolves against the
// directory containing the family file.
void write_kantor(const std::string& path, const kantor_family& fam,
                  const std::string& group_path, bool force = false);
kantor_family read_kantor(const std::string& path);

// Automorphism generators: "aut <k> <order>" then k rows, each holding the
// point images followed by the line images.
void write_aut(const std::string& path, const std::vector<perm_pair>& gens,
               long long order, bool force = false);
struct aut_file {
    long long order = 0;
    std::vector<perm_pair> generators;
};
aut_file read_aut(const std::string& path, int num_points, int num_lines);

// Manifest: "manifest <complete|incomplete>" followed by one
// "<16-hex-hash> <filename>" row per listed file.
struct manifest_file {
    bool complete = false;
    std::vector<std::pair<std::string, std::string>> entries; // hash, name
};
void write_manifest(const std::string& path, const manifest_file& m, bool force = false);
manifest_file read_manifest(const std::string& path);

} // namespace gqlab
