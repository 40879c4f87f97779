// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "emtrace/channel.hpp"

namespace emtrace {

/// One artifact inside a scenario package.
struct PackageFile {
    std::string relative_path;  // forward slashes, relative to the package root
    std::string role;  // scene | config | paths | coverage_grid | coverage_image | channel_tensor | channel_meta
    std::string link_or_grid_id;
    std::string bytes;
};

/// A complete scenario's outputs, ready to be laid out on disk.
struct ScenarioResults {
    std::string scene_xml;    // canonical serialization
    std::string config_json;  // normalized configuration
    std::vector<PackageFile> outputs;
};

struct ManifestEntry {
    std::string path;
    std::string role;
    std::string link_or_grid_id;
    std::string sha256;
};

/// Fixed layout: scene.xml, config.json, paths/, coverage/, channels/,
/// manifest.csv (rows sorted by path). Byte-deterministic for identical
/// inputs. Throws PackageExistsError when root exists and is non-empty;
/// partial output is removed on failure.
std::vector<ManifestEntry> write_package(const ScenarioResults& results,
                                         const std::filesystem::path& root);

struct PackageContents {
    ScenarioResults results;
    std::vector<ManifestEntry> manifest;
};

/// Validates every digest and the manifest/disk file-set equality, then
/// returns the parsed payloads. Throws IncompletePackageError (missing
/// manifest or files, unlisted files) or CorruptionError (digest mismatch,
/// names the file).
PackageContents read_package(const std::filesystem::path& root);

/// Little-endian channel tensor blob: magic "DTCH", version, N_r, N_t,
/// count, layout flag (0 = CIR taps from first_tap, 1 = CFR samples), then
/// interleaved complex64 (float32 re, im) in (rx, tx, tap-or-freq) row-major
/// order. CIR blobs store the dense tap range [first_tap, first_tap+count).
std::string encode_channel_tensor(const ChannelResponse& response, bool cfr);
ChannelResponse decode_channel_tensor(std::string_view bytes);

/// JSON sidecar with the link metadata for one tensor file.
std::string channel_meta_json(const ChannelResponse& response, double snapshot_time);

}  // namespace emtrace
