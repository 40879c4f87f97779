// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Python bindings for the core operations: scene handling, launch
// direction sampling, interface coefficients, devices/RIS, tracing,
// channel synthesis, coverage and packaging.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "emtrace/channel.hpp"
#include "emtrace/config.hpp"
#include "emtrace/coverage.hpp"
#include "emtrace/dataset.hpp"
#include "emtrace/directions.hpp"
#include "emtrace/errors.hpp"
#include "emtrace/fresnel.hpp"
#include "emtrace/pipeline.hpp"
#include "emtrace/pose.hpp"
#include "emtrace/sha256.hpp"
#include "emtrace/tracer.hpp"
#include "emtrace/utd.hpp"

namespace py = pybind11;
using namespace emtrace;

namespace {

Vec3 to_vec3(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

py::array_t<double> directions_to_array(const std::vector<Vec3>& dirs) {
    py::array_t<double> out({static_cast<py::ssize_t>(dirs.size()), py::ssize_t(3)});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(dirs.size()); ++i) {
        view(i, 0) = dirs[static_cast<size_t>(i)].x;
        view(i, 1) = dirs[static_cast<size_t>(i)].y;
        view(i, 2) = dirs[static_cast<size_t>(i)].z;
    }
    return out;
}

std::vector<Vec3> array_to_directions(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2 || arr.shape(1) != 3)
        throw std::invalid_argument("expected an (N, 3) array");
    auto view = arr.unchecked<2>();
    std::vector<Vec3> out(static_cast<size_t>(arr.shape(0)));
    for (py::ssize_t i = 0; i < arr.shape(0); ++i)
        out[static_cast<size_t>(i)] = {view(i, 0), view(i, 1), view(i, 2)};
    return out;
}

Mat3 orientation_from_angles(double heading, double tilt) {
    return Mat3::rotation_z(heading) * Mat3::rotation_y(tilt);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "deterministic radio ray tracing and MIMO channel synthesis";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SemanticError>(m, "SemanticError", PyExc_ValueError);
    py::register_exception<PackageExistsError>(m, "PackageExistsError", PyExc_FileExistsError);
    py::register_exception<IncompletePackageError>(m, "IncompletePackageError", PyExc_IOError);
    py::register_exception<CorruptionError>(m, "CorruptionError", PyExc_IOError);

    // -- scene ---------------------------------------------------------------
    py::class_<Material>(m, "Material")
        .def(py::init([](const std::string& name, double permittivity, double conductivity,
                         double permeability) {
                 Material mat{name, permittivity, conductivity, permeability, 0.0};
                 mat.validate();
                 return mat;
             }),
             py::arg("name"), py::arg("relative_permittivity"), py::arg("conductivity") = 0.0,
             py::arg("relative_permeability") = 1.0)
        .def_readonly("name", &Material::name)
        .def_readonly("relative_permittivity", &Material::relative_permittivity)
        .def_readonly("conductivity", &Material::conductivity)
        .def_readonly("relative_permeability", &Material::relative_permeability)
        .def("refractive_index", &Material::refractive_index, py::arg("frequency_hz"));

    py::class_<Scene>(m, "Scene")
        .def_property_readonly("frequency_hz", &Scene::frequency_hz)
        .def_property_readonly("wavelength", &Scene::wavelength)
        .def_property_readonly("object_count", [](const Scene& s) { return s.objects().size(); })
        .def_property_readonly("triangle_count", &Scene::triangle_count)
        .def_property_readonly("object_names", [](const Scene& s) {
            std::vector<std::string> names;
            for (const SceneObject& o : s.objects()) names.push_back(o.name);
            return names;
        })
        .def("material_of", [](const Scene& s, size_t index) {
            return s.material_of(s.objects().at(index));
        });

    m.def("parse_scene", [](const std::string& xml) { return parse_scene(xml); }, py::arg("document"));
    m.def("serialize_scene", &serialize_scene, py::arg("scene"));
    m.def("assign_materials_by_name", &assign_materials_by_name, py::arg("scene"), py::arg("rules"));

    // -- geometry ------------------------------------------------------------
    m.def(
        "transform_points",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& points,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& rotation,
           const std::array<double, 3>& translation) {
            if (rotation.ndim() != 2 || rotation.shape(0) != 3 || rotation.shape(1) != 3)
                throw std::invalid_argument("rotation must be a 3x3 matrix");
            Pose pose;
            auto r = rotation.unchecked<2>();
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) pose.rotation.m[i][j] = r(i, j);
            pose.translation = to_vec3(translation);
            return directions_to_array(transform_points(array_to_directions(points), pose));
        },
        py::arg("points"), py::arg("rotation"), py::arg("translation"));

    // -- launch directions ----------------------------------------------------
    m.def("fibonacci_directions",
          [](int count) { return directions_to_array(fibonacci_directions(count)); }, py::arg("count"));
    m.def(
        "biased_directions",
        [](int count, double band_lo, double band_hi, double fraction) {
            return directions_to_array(biased_directions(count, band_lo, band_hi, fraction));
        },
        py::arg("count"), py::arg("band_lo"), py::arg("band_hi"), py::arg("fraction"));

    // -- interface coefficients -----------------------------------------------
    auto geom = [](double theta_i, Complex n1, Complex n2, double wavelength) {
        return InterfaceGeometry{theta_i, n1, n2, wavelength};
    };
    m.def("snell_angle",
          [geom](double theta_i, Complex n1, Complex n2, double wl) { return snell_angle(geom(theta_i, n1, n2, wl)); },
          py::arg("incident_angle"), py::arg("n1"), py::arg("n2"), py::arg("wavelength") = 0.1);
    m.def("fresnel_perp",
          [geom](double theta_i, Complex n1, Complex n2, double wl) { return fresnel_perp(geom(theta_i, n1, n2, wl)); },
          py::arg("incident_angle"), py::arg("n1"), py::arg("n2"), py::arg("wavelength") = 0.1);
    m.def("fresnel_par",
          [geom](double theta_i, Complex n1, Complex n2, double wl) { return fresnel_par(geom(theta_i, n1, n2, wl)); },
          py::arg("incident_angle"), py::arg("n1"), py::arg("n2"), py::arg("wavelength") = 0.1);
    m.def("transmission_coeffs",
          [geom](double theta_i, Complex n1, Complex n2, double wl) {
              return transmission_coeffs(geom(theta_i, n1, n2, wl));
          },
          py::arg("incident_angle"), py::arg("n1"), py::arg("n2"), py::arg("wavelength") = 0.1);
    m.def("update_amplitude", &update_amplitude, py::arg("alpha_old"), py::arg("coeff"),
          py::arg("segment_length"), py::arg("wavelength"));

    m.def(
        "utd_diffraction_coeff",
        [](const std::array<double, 3>& edge_point, const std::array<double, 3>& edge_dir,
           const std::array<double, 3>& face_o_dir, double interior_angle,
           const std::array<double, 3>& incident, const std::array<double, 3>& diffracted,
           double s_incident, double s_diffracted, double wavelength) {
            const WedgeGeometry w{to_vec3(edge_point), normalized(to_vec3(edge_dir)),
                                  normalized(to_vec3(face_o_dir)), interior_angle};
            const DiffractionCoeff d = utd_diffraction_coeff(w, normalized(to_vec3(incident)),
                                                             normalized(to_vec3(diffracted)), s_incident,
                                                             s_diffracted, wavelength);
            return std::make_pair(d.soft, d.hard);
        },
        py::arg("edge_point"), py::arg("edge_dir"), py::arg("face_o_dir"), py::arg("interior_angle"),
        py::arg("incident"), py::arg("diffracted"), py::arg("s_incident"), py::arg("s_diffracted"),
        py::arg("wavelength"));

    // -- devices ---------------------------------------------------------------
    py::class_<AntennaArray>(m, "AntennaArray")
        .def(py::init([](int rows, int cols, double spacing_v, double spacing_h) {
                 AntennaArray a{rows, cols, spacing_v, spacing_h, Mat3::identity()};
                 a.validate();
                 return a;
             }),
             py::arg("rows") = 1, py::arg("cols") = 1, py::arg("spacing_v") = 0.05,
             py::arg("spacing_h") = 0.05)
        .def_readonly("rows", &AntennaArray::rows)
        .def_readonly("cols", &AntennaArray::cols)
        .def_property_readonly("size", &AntennaArray::size);

    py::class_<Terminal>(m, "Terminal")
        .def(py::init([](const std::string& id, const std::array<double, 3>& position, double power_dbm,
                         const AntennaArray& array, const std::array<double, 3>& velocity,
                         const std::string& polarization, double heading, double tilt) {
                 Terminal t;
                 t.id = id;
                 t.position = to_vec3(position);
                 t.tx_power_w = dbm_to_watts(power_dbm);
                 t.array = array;
                 t.array.orientation = orientation_from_angles(heading, tilt);
                 t.heading = heading;
                 t.tilt = tilt;
                 t.velocity = to_vec3(velocity);
                 if (polarization == "V") t.polarization = Polarization::vertical;
                 else if (polarization == "H") t.polarization = Polarization::horizontal;
                 else throw std::invalid_argument("polarization must be 'V' or 'H'");
                 t.validate();
                 return t;
             }),
             py::arg("id"), py::arg("position"), py::arg("power_dbm") = 30.0,
             py::arg("array") = AntennaArray{1, 1, 0.05, 0.05, Mat3::identity()},
             py::arg("velocity") = std::array<double, 3>{0, 0, 0}, py::arg("polarization") = "V",
             py::arg("heading") = 0.0, py::arg("tilt") = 0.0)
        .def_readonly("id", &Terminal::id)
        .def_property_readonly("position", [](const Terminal& t) { return from_vec3(t.position); });

    m.def(
        "array_response",
        [](const AntennaArray& array, double azimuth, double elevation, double wavelength) {
            const auto r = array_response(array, {azimuth, elevation}, wavelength);
            py::array_t<Complex> out(static_cast<py::ssize_t>(r.size()));
            std::copy(r.begin(), r.end(), out.mutable_data());
            return out;
        },
        py::arg("array"), py::arg("azimuth"), py::arg("elevation"), py::arg("wavelength"));

    m.def(
        "doppler_shift",
        [](const std::array<double, 3>& k_dep, const std::array<double, 3>& k_arr,
           const std::array<double, 3>& v_tx, const std::array<double, 3>& v_rx, double wl) {
            return doppler_shift(normalized(to_vec3(k_dep)), normalized(to_vec3(k_arr)), to_vec3(v_tx),
                                 to_vec3(v_rx), wl);
        },
        py::arg("k_dep"), py::arg("k_arr"), py::arg("v_tx"), py::arg("v_rx"), py::arg("wavelength"));

    py::class_<RisPanel>(m, "RisPanel")
        .def(py::init([](int rows, int cols, double pitch, const std::array<double, 3>& center,
                         const std::array<double, 3>& normal, const std::array<double, 3>& x_axis) {
                 RisPanel p;
                 p.id = "ris";
                 p.rows = rows;
                 p.cols = cols;
                 p.pitch = pitch;
                 p.center = to_vec3(center);
                 const Vec3 n = normalized(to_vec3(normal));
                 Vec3 x = to_vec3(x_axis);
                 x = normalized(x - n * dot(x, n));
                 p.frame = Mat3::from_columns(x, cross(n, x), n);
                 p.validate();
                 return p;
             }),
             py::arg("rows"), py::arg("cols"), py::arg("pitch"),
             py::arg("center") = std::array<double, 3>{0, 0, 0},
             py::arg("normal") = std::array<double, 3>{0, 0, 1},
             py::arg("x_axis") = std::array<double, 3>{1, 0, 0})
        .def_readonly("rows", &RisPanel::rows)
        .def_readonly("cols", &RisPanel::cols)
        .def_readwrite("phase_profile", &RisPanel::phase_profile)
        .def_property_readonly("size", &RisPanel::size);

    m.def("ris_single_beam_profile", &ris_single_beam_profile, py::arg("panel"), py::arg("theta0"),
          py::arg("phi0"), py::arg("wavelength"));
    m.def(
        "ris_array_factor",
        [](const RisPanel& p, const std::vector<double>& phases, double theta, double phi, double wl) {
            return ris_array_factor(p, phases, theta, phi, wl);
        },
        py::arg("panel"), py::arg("phases"), py::arg("theta"), py::arg("phi"), py::arg("wavelength"));
    m.def(
        "ris_multibeam_optimize",
        [](const RisPanel& panel, const std::vector<std::pair<double, double>>& targets,
           const std::vector<double>& weights, double wavelength, int iterations, double step_size,
           std::uint64_t seed) {
            std::vector<RisBeamTarget> t;
            for (size_t i = 0; i < targets.size(); ++i)
                t.push_back({targets[i].first, targets[i].second,
                             i < weights.size() ? weights[i] : 1.0, -1.0});
            const RisOptimizeResult r =
                ris_multibeam_optimize(panel, t, wavelength, iterations, step_size, seed);
            return std::make_pair(r.phases, r.objective_history);
        },
        py::arg("panel"), py::arg("targets"), py::arg("weights") = std::vector<double>{},
        py::arg("wavelength") = 0.0857, py::arg("iterations") = 200, py::arg("step_size") = 1e-3,
        py::arg("seed") = 1);
    m.def(
        "apply_ris_to_path",
        [](const RisPanel& p, const std::array<double, 3>& incident, const std::array<double, 3>& outgoing,
           double wl) {
            return apply_ris_to_path(p, normalized(to_vec3(incident)), normalized(to_vec3(outgoing)), wl);
        },
        py::arg("panel"), py::arg("incident_prop"), py::arg("outgoing"), py::arg("wavelength"));

    // -- tracing ----------------------------------------------------------------
    py::class_<InteractionEvent>(m, "InteractionEvent")
        .def_property_readonly("kind", [](const InteractionEvent& e) { return std::string(to_string(e.kind)); })
        .def_property_readonly("point", [](const InteractionEvent& e) { return from_vec3(e.point); })
        .def_readonly("object_index", &InteractionEvent::object_index)
        .def_readonly("incident_angle", &InteractionEvent::incident_angle)
        .def_readonly("segment_length", &InteractionEvent::segment_length);

    py::class_<PathRecord>(m, "PathRecord")
        .def_readonly("gain", &PathRecord::gain)
        .def_readonly("delay", &PathRecord::delay)
        .def_property_readonly("aod", [](const PathRecord& p) {
            return std::make_pair(p.aod.azimuth, p.aod.elevation);
        })
        .def_property_readonly("aoa", [](const PathRecord& p) {
            return std::make_pair(p.aoa.azimuth, p.aoa.elevation);
        })
        .def_readonly("doppler_hz", &PathRecord::doppler_hz)
        .def_property_readonly("pol_matrix",
                               [](const PathRecord& p) {
                                   py::array_t<Complex> out({py::ssize_t(2), py::ssize_t(2)});
                                   auto view = out.mutable_unchecked<2>();
                                   view(0, 0) = p.pol_matrix[0];
                                   view(0, 1) = p.pol_matrix[1];
                                   view(1, 0) = p.pol_matrix[2];
                                   view(1, 1) = p.pol_matrix[3];
                                   return out;
                               })
        .def_readonly("interactions", &PathRecord::interactions)
        .def_property_readonly("interaction_count", &PathRecord::interaction_count)
        .def("__repr__", [](const PathRecord& p) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "PathRecord(|gain|=%.3e, delay=%.3e, n=%d)",
                          std::abs(p.gain), p.delay, p.interaction_count());
            return std::string(buf);
        });

    py::class_<TerminationPolicy>(m, "TerminationPolicy")
        .def(py::init([](int max_interactions, double min_power_w) {
                 TerminationPolicy p{max_interactions, min_power_w};
                 p.validate();
                 return p;
             }),
             py::arg("max_interactions") = 3, py::arg("min_power_w") = 1e-15)
        .def_readonly("max_interactions", &TerminationPolicy::max_interactions)
        .def_readonly("min_power_w", &TerminationPolicy::min_power_w);

    m.def(
        "trace_paths",
        [](const Scene& scene, const Terminal& tx, const std::vector<Terminal>& receivers,
           int launch_count, const TerminationPolicy& policy, double capture_radius, bool diffraction,
           int threads, const std::vector<RisPanel>& panels) {
            const Bvh bvh = scene.triangle_count() > 0 ? Bvh::build(scene) : Bvh{};
            TraceOptions options;
            options.policy = policy;
            options.capture_radius = capture_radius;
            options.enable_diffraction = diffraction;
            options.threads = threads;
            const auto launch = fibonacci_directions(launch_count);
            return trace_paths(scene, bvh, tx, receivers, launch, options, panels).paths_per_rx;
        },
        py::arg("scene"), py::arg("tx"), py::arg("receivers"), py::arg("launch_count") = 100000,
        py::arg("policy") = TerminationPolicy{3, 1e-15}, py::arg("capture_radius") = 0.5,
        py::arg("diffraction") = true, py::arg("threads") = 0,
        py::arg("ris_panels") = std::vector<RisPanel>{});

    // -- channel synthesis -------------------------------------------------------
    m.def(
        "assemble_cir",
        [](const std::vector<PathRecord>& paths, const AntennaArray& tx, const AntennaArray& rx,
           double wavelength, double bandwidth) {
            const auto taps = assemble_cir(paths, tx, rx, wavelength, bandwidth);
            py::array_t<long> indices(static_cast<py::ssize_t>(taps.size()));
            py::array_t<Complex> tensor(
                {static_cast<py::ssize_t>(taps.size()), static_cast<py::ssize_t>(rx.size()),
                 static_cast<py::ssize_t>(tx.size())});
            auto idx = indices.mutable_unchecked<1>();
            auto ten = tensor.mutable_unchecked<3>();
            for (py::ssize_t t = 0; t < static_cast<py::ssize_t>(taps.size()); ++t) {
                idx(t) = taps[static_cast<size_t>(t)].index;
                for (py::ssize_t r = 0; r < rx.size(); ++r)
                    for (py::ssize_t c = 0; c < tx.size(); ++c)
                        ten(t, r, c) = taps[static_cast<size_t>(t)].h[static_cast<size_t>(r * tx.size() + c)];
            }
            return std::make_pair(indices, tensor);
        },
        py::arg("paths"), py::arg("tx_array"), py::arg("rx_array"), py::arg("wavelength"),
        py::arg("bandwidth"));

    m.def(
        "evaluate_cfr",
        [](const std::vector<PathRecord>& paths, const AntennaArray& tx, const AntennaArray& rx,
           double wavelength, const std::vector<double>& freq_grid) {
            const auto cfr = evaluate_cfr(paths, tx, rx, wavelength, freq_grid);
            py::array_t<Complex> tensor({static_cast<py::ssize_t>(rx.size()),
                                         static_cast<py::ssize_t>(tx.size()),
                                         static_cast<py::ssize_t>(freq_grid.size())});
            auto view = tensor.mutable_unchecked<3>();
            const size_t nf = freq_grid.size();
            for (py::ssize_t r = 0; r < rx.size(); ++r)
                for (py::ssize_t c = 0; c < tx.size(); ++c)
                    for (py::ssize_t f = 0; f < static_cast<py::ssize_t>(nf); ++f)
                        view(r, c, f) =
                            cfr[static_cast<size_t>(r * tx.size() + c) * nf + static_cast<size_t>(f)];
            return tensor;
        },
        py::arg("paths"), py::arg("tx_array"), py::arg("rx_array"), py::arg("wavelength"),
        py::arg("freq_grid"));

    m.def("default_freq_grid", &default_freq_grid, py::arg("bandwidth"), py::arg("points"));

    m.def(
        "path_metrics",
        [](const std::vector<PathRecord>& paths) {
            const auto metrics = path_metrics(paths);
            py::list rows;
            for (const PathMetrics& pm : metrics) {
                py::dict row;
                row["path_loss_db"] = pm.path_loss_db;
                row["delay_s"] = pm.delay;
                row["aod_az"] = pm.aod_az;
                row["aod_el"] = pm.aod_el;
                row["aoa_az"] = pm.aoa_az;
                row["aoa_el"] = pm.aoa_el;
                row["doppler_hz"] = pm.doppler_hz;
                row["phase_rad"] = pm.phase_rad;
                rows.append(row);
            }
            return rows;
        },
        py::arg("paths"));

    // -- coverage -----------------------------------------------------------------
    m.def(
        "compute_coverage",
        [](const Scene& scene, const Terminal& tx, const std::array<double, 3>& center, double width,
           double height, const std::array<double, 3>& normal, double resolution,
           const TerminationPolicy& policy, int launch_count, int threads) {
            const Bvh bvh = scene.triangle_count() > 0 ? Bvh::build(scene) : Bvh{};
            GridSpec spec;
            spec.id = "py";
            spec.center = to_vec3(center);
            spec.width = width;
            spec.height = height;
            spec.normal = to_vec3(normal);
            spec.resolution = resolution;
            TraceOptions options;
            options.threads = threads;
            const CoverageGrid grid =
                compute_coverage(scene, bvh, tx, spec, policy, launch_count, options);
            py::array_t<double> out({static_cast<py::ssize_t>(spec.ny()), static_cast<py::ssize_t>(spec.nx())});
            auto view = out.mutable_unchecked<2>();
            for (int iy = 0; iy < spec.ny(); ++iy)
                for (int ix = 0; ix < spec.nx(); ++ix) view(iy, ix) = grid.at(ix, iy);
            return out;
        },
        py::arg("scene"), py::arg("tx"), py::arg("center"), py::arg("width"), py::arg("height"),
        py::arg("normal") = std::array<double, 3>{0, 0, 1}, py::arg("resolution") = 1.0,
        py::arg("policy") = TerminationPolicy{3, 1e-15}, py::arg("launch_count") = 20000,
        py::arg("threads") = 0);

    // -- pipeline / packaging -------------------------------------------------------
    m.def(
        "run_scenario",
        [](const std::filesystem::path& config_path, const std::filesystem::path& output_root,
           int threads, std::optional<std::uint64_t> seed) {
            const SimulationConfig config = load_config(config_path);
            const auto issues = validate_config(config);
            if (!issues.empty()) {
                std::string msg = "configuration is invalid:";
                for (const auto& issue : issues) msg += "\n  [" + issue.module + "] " + issue.message;
                throw SemanticError(msg);
            }
            RunOverrides overrides;
            overrides.threads = threads;
            overrides.seed = seed;
            const RunSummary summary = run_scenario(config, output_root, overrides);
            py::dict out;
            out["artifacts"] = summary.manifest.size();
            out["rays_launched"] = summary.rays_launched;
            out["segments_traced"] = summary.segments_traced;
            out["trace_seconds"] = summary.trace_seconds;
            py::dict counts;
            for (const auto& [link, count] : summary.path_counts) counts[py::str(link)] = count;
            out["path_counts"] = counts;
            return out;
        },
        py::arg("config_path"), py::arg("output_root"), py::arg("threads") = 0,
        py::arg("seed") = py::none());

    m.def(
        "read_package",
        [](const std::filesystem::path& root) {
            const PackageContents contents = read_package(root);
            py::list manifest;
            for (const ManifestEntry& e : contents.manifest) {
                py::dict row;
                row["path"] = e.path;
                row["role"] = e.role;
                row["link_or_grid_id"] = e.link_or_grid_id;
                row["sha256"] = e.sha256;
                manifest.append(row);
            }
            return manifest;
        },
        py::arg("root"));

    m.def(
        "validate_config",
        [](const std::filesystem::path& config_path) {
            const SimulationConfig config = load_config(config_path);
            py::list out;
            for (const auto& issue : validate_config(config)) {
                py::dict row;
                row["module"] = issue.module;
                row["message"] = issue.message;
                out.append(row);
            }
            return out;
        },
        py::arg("config_path"));

    m.def("sha256_hex", [](const py::bytes& data) { return sha256_hex(std::string(data)); },
          py::arg("data"));

    m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
    m.attr("__version__") = "0.1.0";
}
