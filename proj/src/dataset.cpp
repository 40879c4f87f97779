// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#include "emtrace/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>

#include <json.hpp>

#include "emtrace/errors.hpp"
#include "emtrace/sha256.hpp"
#include "emtrace/strfmt.hpp"

namespace emtrace {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint32_t kTensorVersion = 1;

void append_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t read_u32(std::string_view bytes, size_t offset) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
    return v;
}

void append_f32(std::string& out, float v) {
    static_assert(sizeof(float) == 4);
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    append_u32(out, bits);
}

float read_f32(std::string_view bytes, size_t offset) {
    const std::uint32_t bits = read_u32(bytes, offset);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

void write_file(const fs::path& path, const std::string& bytes) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IncompletePackageError("missing file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

}  // namespace

std::vector<ManifestEntry> write_package(const ScenarioResults& results, const fs::path& root) {
    if (fs::exists(root) && !fs::is_empty(root))
        throw PackageExistsError("output root is not empty: " + root.string());

    std::vector<std::pair<std::string, const std::string*>> files;
    std::vector<ManifestEntry> manifest;
    manifest.push_back({"scene.xml", "scene", "", sha256_hex(results.scene_xml)});
    files.emplace_back("scene.xml", &results.scene_xml);
    manifest.push_back({"config.json", "config", "", sha256_hex(results.config_json)});
    files.emplace_back("config.json", &results.config_json);
    for (const PackageFile& f : results.outputs) {
        manifest.push_back({f.relative_path, f.role, f.link_or_grid_id, sha256_hex(f.bytes)});
        files.emplace_back(f.relative_path, &f.bytes);
    }
    std::sort(manifest.begin(), manifest.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });

    std::string manifest_csv = "path,role,link_or_grid_id,sha256\n";
    for (const ManifestEntry& e : manifest)
        manifest_csv += csv_field(e.path) + "," + e.role + "," + csv_field(e.link_or_grid_id) + "," +
                        e.sha256 + "\n";

    try {
        fs::create_directories(root);
        fs::create_directories(root / "paths");
        fs::create_directories(root / "coverage");
        fs::create_directories(root / "channels");
        for (const auto& [rel, bytes] : files) write_file(root / rel, *bytes);
        write_file(root / "manifest.csv", manifest_csv);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(root, ec);  // no partial packages
        throw;
    }
    return manifest;
}

PackageContents read_package(const fs::path& root) {
    const fs::path manifest_path = root / "manifest.csv";
    if (!fs::exists(manifest_path))
        throw IncompletePackageError("manifest.csv not found under " + root.string());

    PackageContents contents;
    const std::string manifest_csv = read_file(manifest_path);

    // parse the manifest (simple CSV; quoted fields only for paths/ids)
    size_t pos = manifest_csv.find('\n');
    if (pos == std::string::npos) throw IncompletePackageError("manifest.csv is empty");
    while (pos + 1 < manifest_csv.size()) {
        const size_t end = manifest_csv.find('\n', pos + 1);
        const std::string line = manifest_csv.substr(pos + 1, end - pos - 1);
        pos = end == std::string::npos ? manifest_csv.size() : end;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(std::move(cur));
        if (fields.size() != 4) throw IncompletePackageError("malformed manifest row: " + line);
        contents.manifest.push_back({fields[0], fields[1], fields[2], fields[3]});
    }

    // digests and contents
    std::set<std::string> listed;
    for (const ManifestEntry& e : contents.manifest) {
        listed.insert(e.path);
        const std::string bytes = read_file(root / e.path);
        if (sha256_hex(bytes) != e.sha256)
            throw CorruptionError("digest mismatch", e.path);
        if (e.role == "scene")
            contents.results.scene_xml = bytes;
        else if (e.role == "config")
            contents.results.config_json = bytes;
        else
            contents.results.outputs.push_back({e.path, e.role, e.link_or_grid_id, bytes});
    }

    // completeness: every file on disk (except the manifest) must be listed
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), root).generic_string();
        if (rel == "manifest.csv") continue;
        if (!listed.count(rel))
            throw IncompletePackageError("file on disk is not listed in the manifest: " + rel);
    }
    return contents;
}

std::string encode_channel_tensor(const ChannelResponse& response, bool cfr) {
    std::string out = "DTCH";
    append_u32(out, kTensorVersion);
    append_u32(out, static_cast<std::uint32_t>(response.n_rx));
    append_u32(out, static_cast<std::uint32_t>(response.n_tx));
    if (cfr) {
        append_u32(out, static_cast<std::uint32_t>(response.freq_grid.size()));
        append_u32(out, 1);
        for (const Complex& v : response.cfr) {
            append_f32(out, static_cast<float>(v.real()));
            append_f32(out, static_cast<float>(v.imag()));
        }
        return out;
    }
    const int first_tap = response.cir.empty() ? 0 : response.cir.front().index;
    const int last_tap = response.cir.empty() ? -1 : response.cir.back().index;
    const int count = last_tap - first_tap + 1;
    append_u32(out, static_cast<std::uint32_t>(std::max(count, 0)));
    append_u32(out, 0);
    append_u32(out, static_cast<std::uint32_t>(first_tap));
    if (count <= 0) return out;
    const size_t mat = static_cast<size_t>(response.n_rx) * static_cast<size_t>(response.n_tx);
    std::vector<Complex> dense(mat * static_cast<size_t>(count), Complex{0.0, 0.0});
    for (const CirTap& tap : response.cir)
        for (size_t i = 0; i < mat; ++i)
            dense[i * static_cast<size_t>(count) + static_cast<size_t>(tap.index - first_tap)] = tap.h[i];
    for (const Complex& v : dense) {
        append_f32(out, static_cast<float>(v.real()));
        append_f32(out, static_cast<float>(v.imag()));
    }
    return out;
}

ChannelResponse decode_channel_tensor(std::string_view bytes) {
    if (bytes.size() < 24 || bytes.substr(0, 4) != "DTCH")
        throw std::invalid_argument("not a channel tensor blob");
    ChannelResponse r;
    const std::uint32_t version = read_u32(bytes, 4);
    if (version != kTensorVersion) throw std::invalid_argument("unsupported channel tensor version");
    r.n_rx = static_cast<int>(read_u32(bytes, 8));
    r.n_tx = static_cast<int>(read_u32(bytes, 12));
    const std::uint32_t count = read_u32(bytes, 16);
    const std::uint32_t layout = read_u32(bytes, 20);
    const size_t mat = static_cast<size_t>(r.n_rx) * static_cast<size_t>(r.n_tx);
    if (layout == 1) {
        size_t off = 24;
        r.cfr.resize(mat * count);
        for (Complex& v : r.cfr) {
            v = {read_f32(bytes, off), read_f32(bytes, off + 4)};
            off += 8;
        }
        r.freq_grid.assign(count, 0.0);  // grid values live in the sidecar
        return r;
    }
    if (layout != 0) throw std::invalid_argument("unknown channel tensor layout");
    const int first_tap = static_cast<int>(read_u32(bytes, 24));
    size_t off = 28;
    for (std::uint32_t t = 0; t < count; ++t) {
        CirTap tap;
        tap.index = first_tap + static_cast<int>(t);
        tap.h.resize(mat);
        tap.h.assign(mat, Complex{0.0, 0.0});
        r.cir.push_back(std::move(tap));
    }
    for (size_t i = 0; i < mat; ++i)
        for (std::uint32_t t = 0; t < count; ++t) {
            r.cir[t].h[i] = {read_f32(bytes, off), read_f32(bytes, off + 4)};
            off += 8;
        }
    return r;
}

std::string channel_meta_json(const ChannelResponse& response, double snapshot_time) {
    json meta;
    meta["tx"] = response.tx_id;
    meta["rx"] = response.rx_id;
    meta["n_rx"] = response.n_rx;
    meta["n_tx"] = response.n_tx;
    meta["bandwidth_hz"] = response.sample_rate;
    meta["snapshot_time_s"] = snapshot_time;
    meta["tap_count"] = response.cir.size();
    meta["first_tap"] = response.cir.empty() ? 0 : response.cir.front().index;
    json grid = json::array();
    for (double f : response.freq_grid) grid.push_back(f);
    meta["freq_grid_hz"] = grid;
    return meta.dump(2) + "\n";
}

}  // namespace emtrace
