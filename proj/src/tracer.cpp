// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors
//
// Two-phase tracer. Phase 1 marches launch rays through the BVH, branching
// at interfaces and pruning with the termination policy; segments passing
// near a receiver nominate interaction signatures. Phase 2 reconstructs each
// signature exactly with the image method, re-walks it against the geometry
// to validate ordering and occlusion, and evaluates the polarized gain.

#include "emtrace/tracer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <thread>
#include <unordered_map>

#include "emtrace/fresnel.hpp"
#include "emtrace/utd.hpp"

namespace emtrace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGeomEps = 1e-6;      // meters
constexpr double kFourPi = 4.0 * kPi;

struct Jones2x2 {
    // row-major 2x2, slots (perp, par) relative to the tracked basis
    Complex m[2][2]{{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {1.0, 0.0}}};

    static Jones2x2 rotation(double r00, double r01, double r10, double r11) {
        Jones2x2 j;
        j.m[0][0] = r00; j.m[0][1] = r01;
        j.m[1][0] = r10; j.m[1][1] = r11;
        return j;
    }
    Jones2x2 scaled_rows(Complex top, Complex bottom) const {
        Jones2x2 j;
        for (int c = 0; c < 2; ++c) {
            j.m[0][c] = top * m[0][c];
            j.m[1][c] = bottom * m[1][c];
        }
        return j;
    }
    Jones2x2 operator*(const Jones2x2& o) const {
        Jones2x2 j;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                j.m[r][c] = m[r][0] * o.m[0][c] + m[r][1] * o.m[1][c];
        return j;
    }
    double column_norm_sq(int c) const { return std::norm(m[0][c]) + std::norm(m[1][c]); }
};

// theta-hat / phi-hat of the spherical basis at direction u
Vec3 theta_hat(const Vec3& u) {
    const double st = std::hypot(u.x, u.y);
    if (st < 1e-12) return {u.z >= 0.0 ? 1.0 : -1.0, 0.0, 0.0};  // pole: pick phi = 0
    const double ct = u.z;
    return {ct * u.x / st, ct * u.y / st, -st};
}
Vec3 phi_hat(const Vec3& u) {
    const double st = std::hypot(u.x, u.y);
    if (st < 1e-12) return {0.0, 1.0, 0.0};
    return {-u.y / st, u.x / st, 0.0};
}

// perpendicular basis vector for an interaction: s-hat normal to the plane
// of incidence, deterministic at normal incidence
Vec3 incidence_s_hat(const Vec3& dir, const Vec3& surface_normal) {
    Vec3 s = cross(dir, surface_normal);
    const double n = norm(s);
    if (n < 1e-9) return any_orthonormal(dir);
    return s / n;
}

struct BasisState {
    Vec3 dir;     // propagation direction, unit
    Vec3 e_perp;  // unit, perpendicular to dir
    Vec3 e_par() const { return cross(e_perp, dir); }
};

// rotation taking Jones components from `from` basis into (new_perp, new_par)
Jones2x2 basis_rotation(const BasisState& from, const Vec3& new_perp, const Vec3& new_par) {
    const Vec3 old_par = from.e_par();
    return Jones2x2::rotation(dot(new_perp, from.e_perp), dot(new_perp, old_par),
                              dot(new_par, from.e_perp), dot(new_par, old_par));
}

int polarization_slot(Polarization p) { return p == Polarization::vertical ? 0 : 1; }

// ---------------------------------------------------------------------------
// candidate bookkeeping

struct CandidateEvent {
    InteractionKind kind;
    int object_index;
    int ris_index{-1};
    Vec3 plane_point;
    Vec3 plane_normal;  // oriented toward the incident side at discovery time
};

struct CandidateKey {
    int rx;
    std::string events;  // packed (kind, object, quantized plane)

    bool operator==(const CandidateKey&) const = default;
};

struct CandidateKeyHash {
    size_t operator()(const CandidateKey& k) const {
        return std::hash<std::string>()(k.events) ^ (std::hash<int>()(k.rx) * 1315423911u);
    }
};

std::string pack_events(const std::vector<CandidateEvent>& events) {
    std::string out;
    out.reserve(events.size() * 40);
    char buf[96];
    for (const CandidateEvent& ev : events) {
        const double d = dot(ev.plane_normal, ev.plane_point);
        std::snprintf(buf, sizeof(buf), "%d:%d:%d:%lld:%lld:%lld:%lld;", static_cast<int>(ev.kind),
                      ev.object_index, ev.ris_index,
                      static_cast<long long>(std::llround(ev.plane_normal.x * 1e7)),
                      static_cast<long long>(std::llround(ev.plane_normal.y * 1e7)),
                      static_cast<long long>(std::llround(ev.plane_normal.z * 1e7)),
                      static_cast<long long>(std::llround(d * 1e6)));
        out += buf;
    }
    return out;
}

struct Candidate {
    int rx;
    std::vector<CandidateEvent> events;
};

// squared distance from a point to the segment [a, a + dir * t_end]
double point_segment_dist_sq(const Vec3& p, const Vec3& a, const Vec3& dir, double t_end) {
    const double t = std::clamp(dot(p - a, dir), 0.0, t_end);
    return norm_sq(p - (a + dir * t));
}

// ---------------------------------------------------------------------------
// marching

struct MarchContext {
    const Scene* scene;
    const Bvh* bvh;
    const Terminal* tx;
    std::span<const Terminal> receivers;
    std::span<const RisPanel> panels;
    const TraceOptions* options;
    double wavelength;
};

// per-material interaction coefficients; evaluated exactly (no table) since
// the Fresnel forms are cheap
struct SurfaceCoeffs {
    Complex r_perp, r_par, t_perp, t_par;
};

SurfaceCoeffs surface_coeffs(const Scene& scene, int object_index, double incident_angle) {
    const Material& mat = scene.material_of(scene.objects()[static_cast<size_t>(object_index)]);
    InterfaceGeometry g;
    g.incident_angle = incident_angle;
    g.n1 = {1.0, 0.0};
    g.n2 = mat.refractive_index(scene.frequency_hz());
    g.wavelength = scene.wavelength();
    SurfaceCoeffs c;
    c.r_perp = fresnel_perp(g);
    c.r_par = fresnel_par(g);
    std::tie(c.t_perp, c.t_par) = transmission_coeffs(g);
    return c;
}

struct MarchRay {
    Vec3 origin;
    Vec3 dir;
    double length{0.0};
    Complex jones[2];  // launched polarization propagated through the chain
    int interactions{0};
    std::vector<CandidateEvent> events;
    Vec3 e_perp;
    // power fell to the floor at the last interaction: one more capture
    // segment is traced (a path may end on a below-threshold interaction)
    // but no further interactions are spawned
    bool final_segment_only{false};
};

double exit_distance(const Aabb& box, const Vec3& origin, const Vec3& dir) {
    double t_exit = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        if (std::abs(dir[a]) < 1e-300) continue;
        const double t = ((dir[a] > 0.0 ? box.hi[a] : box.lo[a]) - origin[a]) / dir[a];
        t_exit = std::min(t_exit, t);
    }
    return t_exit;
}

struct BlockOutput {
    std::vector<Candidate> candidates;
    std::uint64_t segments{0};
};

void march_one_ray(const MarchContext& ctx, const Vec3& launch_dir, BlockOutput& out) {
    const double aperture = ctx.wavelength / kFourPi;
    const double p_tx = ctx.tx->tx_power_w;
    const TerminationPolicy& policy = ctx.options->policy;
    const double radius_sq = ctx.options->capture_radius * ctx.options->capture_radius;

    std::vector<MarchRay> stack;
    MarchRay first;
    first.origin = ctx.tx->position;
    first.dir = launch_dir;
    first.e_perp = phi_hat(launch_dir);
    first.jones[0] = 0.0;
    first.jones[1] = 0.0;
    first.jones[polarization_slot(ctx.tx->polarization) == 0 ? 1 : 0] = 1.0;
    // slot order is (perp, par) = (phi, theta) at departure; vertical -> par
    stack.push_back(std::move(first));

    while (!stack.empty()) {
        MarchRay ray = std::move(stack.back());
        stack.pop_back();

        while (true) {
            const auto hit = ctx.bvh->nearest_hit(ray.origin, ray.dir, kGeomEps);
            double t_end = hit ? hit->t : exit_distance(ctx.scene->padded_bounds(), ray.origin, ray.dir);
            if (!std::isfinite(t_end)) t_end = 0.0;
            if (t_end > 0.0) {
                ++out.segments;
                for (size_t r = 0; r < ctx.receivers.size(); ++r) {
                    if (point_segment_dist_sq(ctx.receivers[r].position, ray.origin, ray.dir, t_end) <
                        radius_sq)
                        out.candidates.push_back({static_cast<int>(r), ray.events});
                }
            }
            if (!hit || ray.final_segment_only) break;

            const SceneObject& obj = ctx.scene->objects()[static_cast<size_t>(hit->object_index)];
            if (obj.is_ris) {
                // RIS terminates the geometric recursion and re-radiates;
                // nominate one candidate per receiver
                if (ray.interactions < policy.max_interactions && obj.ris_index >= 0) {
                    CandidateEvent ev{InteractionKind::ris, hit->object_index, obj.ris_index, hit->point,
                                      hit->normal};
                    for (size_t r = 0; r < ctx.receivers.size(); ++r) {
                        auto events = ray.events;
                        events.push_back(ev);
                        out.candidates.push_back({static_cast<int>(r), std::move(events)});
                    }
                }
                break;
            }

            if (ray.interactions >= policy.max_interactions) break;
            const double len_here = ray.length + hit->t;
            const double power_in =
                p_tx * aperture * aperture * (std::norm(ray.jones[0]) + std::norm(ray.jones[1])) /
                (len_here * len_here);
            if (power_in <= policy.min_power_w) break;

            const double cos_inc = std::clamp(-dot(ray.dir, hit->normal), 0.0, 1.0);
            const double theta_i = std::acos(cos_inc);
            const SurfaceCoeffs coeffs = surface_coeffs(*ctx.scene, hit->object_index, theta_i);

            const Vec3 s_hat = incidence_s_hat(ray.dir, hit->normal);
            const Vec3 p_in = cross(s_hat, ray.dir);
            const BasisState from{ray.dir, ray.e_perp};
            const Jones2x2 rot = basis_rotation(from, s_hat, p_in);
            const Complex s_amp = rot.m[0][0] * ray.jones[0] + rot.m[0][1] * ray.jones[1];
            const Complex p_amp = rot.m[1][0] * ray.jones[0] + rot.m[1][1] * ray.jones[1];

            CandidateEvent ev{InteractionKind::reflection, hit->object_index, -1, hit->point, hit->normal};

            auto branch_power = [&](const Complex& a, const Complex& b) {
                return p_tx * aperture * aperture * (std::norm(a) + std::norm(b)) /
                       (len_here * len_here);
            };

            // transmitted branch continues straight through the interface
            {
                MarchRay trans;
                trans.origin = hit->point;
                trans.dir = ray.dir;
                trans.length = len_here;
                trans.jones[0] = coeffs.t_perp * s_amp;
                trans.jones[1] = coeffs.t_par * p_amp;
                trans.interactions = ray.interactions + 1;
                trans.events = ray.events;
                CandidateEvent tev = ev;
                tev.kind = InteractionKind::transmission;
                trans.events.push_back(tev);
                trans.e_perp = s_hat;
                trans.final_segment_only =
                    branch_power(trans.jones[0], trans.jones[1]) <= policy.min_power_w;
                stack.push_back(std::move(trans));
            }

            // reflected branch continues in place
            ray.events.push_back(ev);
            ray.interactions += 1;
            ray.length = len_here;
            ray.origin = hit->point;
            ray.dir = reflect(ray.dir, hit->normal);
            ray.e_perp = s_hat;
            ray.jones[0] = coeffs.r_perp * s_amp;
            ray.jones[1] = coeffs.r_par * p_amp;
            ray.final_segment_only = branch_power(ray.jones[0], ray.jones[1]) <= policy.min_power_w;
        }
    }
}

// ---------------------------------------------------------------------------
// exact refinement

struct RefineOutcome {
    PathRecord path;
    bool ok{false};
};

struct WalkEvent {
    InteractionKind kind;
    int object_index;
    Vec3 point;
    double incident_angle;
    double segment_length;
    Vec3 normal;
};

// Re-walks the polyline tx -> q1 .. qm -> end against the BVH. Crossings
// strictly inside a leg must match pending transmission events; each leg
// endpoint must land on its reflection object. Returns the realized event
// list (with exact transmission points) or nothing when blocked/mismatched.
std::optional<std::vector<WalkEvent>> rewalk(const Bvh& bvh,
                                             const std::vector<Vec3>& points,
                                             const std::vector<CandidateEvent>& events,
                                             const std::vector<int>& reflection_event_index) {
    std::vector<WalkEvent> out;
    size_t cursor = 0;
    double since_last_event = 0.0;
    for (size_t leg = 0; leg + 1 < points.size(); ++leg) {
        const Vec3 a = points[leg];
        const Vec3 b = points[leg + 1];
        const double leg_len = norm(b - a);
        if (leg_len < kGeomEps) return std::nullopt;
        const Vec3 dir = (b - a) / leg_len;
        const bool final_leg = leg + 2 == points.size();

        double t0 = kGeomEps;
        bool endpoint_confirmed = false;
        while (true) {
            const double t_cap = final_leg ? leg_len - kGeomEps : leg_len + kGeomEps;
            const auto hit = bvh.nearest_hit(a, dir, t0, t_cap);
            if (!hit) break;
            const bool at_leg_end = hit->t > leg_len - kGeomEps;
            if (at_leg_end && !final_leg) {
                // the reflection endpoint: it must land on the expected
                // object's finite geometry (the hit test is the in-face check)
                const int refl_evt = reflection_event_index[leg];
                if (refl_evt < 0 || cursor != static_cast<size_t>(refl_evt)) return std::nullopt;
                if (hit->object_index != events[cursor].object_index) return std::nullopt;
                endpoint_confirmed = true;
                break;
            }
            // interior crossing: must be the next pending transmission
            if (cursor >= events.size()) return std::nullopt;
            if (events[cursor].kind != InteractionKind::transmission) return std::nullopt;
            if (events[cursor].object_index != hit->object_index) return std::nullopt;
            const double cos_inc = std::clamp(-dot(dir, hit->normal), 0.0, 1.0);
            out.push_back({InteractionKind::transmission, hit->object_index, hit->point,
                           std::acos(cos_inc), since_last_event + hit->t, hit->normal});
            since_last_event = -hit->t;  // lengths accumulate across legs between events
            ++cursor;
            t0 = hit->t + kGeomEps;
        }

        if (!final_leg) {
            if (!endpoint_confirmed) return std::nullopt;  // point lies off the finite faces
            if (cursor >= events.size()) return std::nullopt;
            const CandidateEvent& ev = events[cursor];
            if (ev.kind != InteractionKind::reflection) return std::nullopt;
            Vec3 n = ev.plane_normal;
            if (dot(n, dir) > 0.0) n = -n;
            const double cos_inc = std::clamp(-dot(dir, n), 0.0, 1.0);
            out.push_back({InteractionKind::reflection, ev.object_index, b, std::acos(cos_inc),
                           since_last_event + leg_len, n});
            since_last_event = 0.0;
            ++cursor;
        } else {
            since_last_event += leg_len;
        }
    }
    if (cursor != events.size()) return std::nullopt;
    return out;
}

struct ChainResult {
    Jones2x2 jones;      // whole-chain polarization transfer in evolving bases
    BasisState state;    // final propagation basis
    double total_length;
    std::vector<WalkEvent> events;
    Vec3 depart_dir;
};

// applies the realized event chain to the polarization state
ChainResult apply_chain(const Scene& scene, const std::vector<Vec3>& points,
                        const std::vector<WalkEvent>& walk_events) {
    ChainResult r;
    r.depart_dir = normalized(points[1] - points[0]);
    r.state.dir = r.depart_dir;
    r.state.e_perp = phi_hat(r.depart_dir);
    r.jones = Jones2x2::rotation(1.0, 0.0, 0.0, 1.0);  // slots (perp, par) = (phi, theta)

    double total = 0.0;
    size_t point_cursor = 1;  // next reflection point in `points`
    for (const WalkEvent& ev : walk_events) {
        const SurfaceCoeffs coeffs = surface_coeffs(scene, ev.object_index, ev.incident_angle);
        const Vec3 s_hat = incidence_s_hat(r.state.dir, ev.normal);
        const Vec3 p_in = cross(s_hat, r.state.dir);
        const Jones2x2 rot = basis_rotation(r.state, s_hat, p_in);
        if (ev.kind == InteractionKind::reflection) {
            r.jones = (rot * r.jones).scaled_rows(coeffs.r_perp, coeffs.r_par);
            r.state.dir = reflect(r.state.dir, ev.normal);
            r.state.e_perp = s_hat;
            ++point_cursor;
        } else {  // transmission
            r.jones = (rot * r.jones).scaled_rows(coeffs.t_perp, coeffs.t_par);
            r.state.e_perp = s_hat;
        }
        total += ev.segment_length;
    }
    // remaining distance to the path end
    double tail = 0.0;
    if (walk_events.empty()) {
        tail = norm(points.back() - points.front());
    } else {
        tail = norm(points.back() - walk_events.back().point);
        // intermediate reflection points between the last event and the end
        // cannot exist: reflections are walk events themselves
    }
    r.total_length = total + tail;
    return r;
}

struct RefineContext {
    const Scene* scene;
    const Bvh* bvh;
    const Terminal* tx;
    std::span<const Terminal> receivers;
    std::span<const RisPanel> panels;
    const TraceOptions* options;
    double wavelength;
};

// gain matrix = scale * P(arrival projection) * B, reported with the
// (theta, phi) antenna convention on both ends
void finish_path(const RefineContext& ctx, const Terminal& rx, const ChainResult& chain,
                 Complex scale, PathRecord& path) {
    const Vec3 arrive_prop = chain.state.dir;
    const Vec3 aoa_unit = -arrive_prop;
    const Vec3 th_r = theta_hat(aoa_unit);
    const Vec3 ph_r = phi_hat(aoa_unit);
    const Vec3 e_par = chain.state.e_par();
    // rows: rx theta, phi components; columns: chain slots (perp, par)
    const Jones2x2 project = Jones2x2::rotation(dot(th_r, chain.state.e_perp), dot(th_r, e_par),
                                                dot(ph_r, chain.state.e_perp), dot(ph_r, e_par));
    // departure slots (perp, par) = (phi, theta): reorder columns to (theta, phi)
    const Jones2x2 m = project * chain.jones;
    const Complex full[2][2] = {{m.m[0][1], m.m[0][0]}, {m.m[1][1], m.m[1][0]}};

    path.pol_matrix = {scale * full[0][0], scale * full[0][1], scale * full[1][0], scale * full[1][1]};
    const int rs = polarization_slot(rx.polarization);
    const int ts = polarization_slot(ctx.tx->polarization);
    path.gain = scale * full[rs][ts];
    path.aod = Direction::from_unit(chain.depart_dir);
    path.aoa = Direction::from_unit(aoa_unit);
    path.doppler_hz = doppler_shift(chain.depart_dir, arrive_prop, ctx.tx->velocity, rx.velocity,
                                    ctx.wavelength);
}

bool power_profile_ok(const RefineContext& ctx, const ChainResult& chain) {
    // every non-final event must stay above the power floor (the marched ray
    // would have been pruned there otherwise)
    const double aperture = ctx.wavelength / kFourPi;
    const double p_tx = ctx.tx->tx_power_w;
    if (chain.events.size() <= 1) return true;

    // rebuild the per-event jones column norms by replaying coefficients
    BasisState state{chain.depart_dir, phi_hat(chain.depart_dir)};
    Complex jones[2] = {0.0, 0.0};
    jones[polarization_slot(ctx.tx->polarization) == 0 ? 1 : 0] = 1.0;
    double length = 0.0;
    for (size_t i = 0; i < chain.events.size(); ++i) {
        const WalkEvent& ev = chain.events[i];
        const SurfaceCoeffs coeffs = surface_coeffs(*ctx.scene, ev.object_index, ev.incident_angle);
        const Vec3 s_hat = incidence_s_hat(state.dir, ev.normal);
        const Vec3 p_in = cross(s_hat, state.dir);
        const Jones2x2 rot = basis_rotation(state, s_hat, p_in);
        const Complex s_amp = rot.m[0][0] * jones[0] + rot.m[0][1] * jones[1];
        const Complex p_amp = rot.m[1][0] * jones[0] + rot.m[1][1] * jones[1];
        if (ev.kind == InteractionKind::reflection) {
            jones[0] = coeffs.r_perp * s_amp;
            jones[1] = coeffs.r_par * p_amp;
            state.dir = reflect(state.dir, ev.normal);
        } else {
            jones[0] = coeffs.t_perp * s_amp;
            jones[1] = coeffs.t_par * p_amp;
        }
        state.e_perp = s_hat;
        length += ev.segment_length;
        if (i + 1 < chain.events.size()) {
            const double power = p_tx * aperture * aperture *
                                 (std::norm(jones[0]) + std::norm(jones[1])) / (length * length);
            if (!(power > ctx.options->policy.min_power_w)) return false;
        }
    }
    return true;
}

RefineOutcome refine_specular(const RefineContext& ctx, int rx_index,
                              const std::vector<CandidateEvent>& events) {
    RefineOutcome outcome;
    const Terminal& rx = ctx.receivers[static_cast<size_t>(rx_index)];

    // mirror tx across the reflection planes in order
    std::vector<Vec3> images{ctx.tx->position};
    std::vector<int> reflection_events;
    for (size_t i = 0; i < events.size(); ++i) {
        if (events[i].kind == InteractionKind::reflection) {
            images.push_back(mirror_point(images.back(), events[i].plane_point, events[i].plane_normal));
            reflection_events.push_back(static_cast<int>(i));
        } else if (events[i].kind != InteractionKind::transmission) {
            return outcome;  // ris/diffraction handled elsewhere
        }
    }

    // walk back from the receiver through the plane stack
    const size_t m = reflection_events.size();
    std::vector<Vec3> reflection_points(m);
    Vec3 cur = rx.position;
    for (size_t j = m; j-- > 0;) {
        const CandidateEvent& ev = events[static_cast<size_t>(reflection_events[j])];
        const Vec3 img = images[j + 1];
        const Vec3 seg = img - cur;
        const double denom = dot(seg, ev.plane_normal);
        if (std::abs(denom) < 1e-15) return outcome;
        const double t = dot(ev.plane_point - cur, ev.plane_normal) / denom;
        if (!(t > 1e-12 && t < 1.0 - 1e-12)) return outcome;  // plane not crossed between the endpoints
        cur = cur + seg * t;
        reflection_points[j] = cur;
    }

    std::vector<Vec3> points;
    points.reserve(m + 2);
    points.push_back(ctx.tx->position);
    for (const Vec3& q : reflection_points) points.push_back(q);
    points.push_back(rx.position);

    // map leg index -> expected event index for its endpoint reflection
    std::vector<int> leg_reflection(points.size(), -1);
    for (size_t j = 0; j < m; ++j) leg_reflection[j] = reflection_events[j];

    auto walked = rewalk(*ctx.bvh, points, events, leg_reflection);
    if (!walked) return outcome;

    ChainResult chain = apply_chain(*ctx.scene, points, *walked);
    chain.events = std::move(*walked);
    if (static_cast<int>(chain.events.size()) > ctx.options->policy.max_interactions) return outcome;
    if (!power_profile_ok(ctx, chain)) return outcome;

    const double wl = ctx.wavelength;
    const double k = 2.0 * kPi / wl;
    const double L = chain.total_length;
    if (L < kGeomEps) return outcome;
    const Complex scale = (wl / kFourPi) * std::polar(1.0, -k * L) / L;

    PathRecord& path = outcome.path;
    path.delay = L / kSpeedOfLight;
    for (const WalkEvent& ev : chain.events)
        path.interactions.push_back(
            {ev.kind, ev.point, ev.object_index, ev.incident_angle, ev.segment_length});
    finish_path(ctx, rx, chain, scale, path);
    outcome.ok = true;
    return outcome;
}

RefineOutcome refine_ris(const RefineContext& ctx, int rx_index,
                         const std::vector<CandidateEvent>& events) {
    RefineOutcome outcome;
    const Terminal& rx = ctx.receivers[static_cast<size_t>(rx_index)];
    if (events.empty() || events.back().kind != InteractionKind::ris) return outcome;
    const CandidateEvent& ris_ev = events.back();
    if (ris_ev.ris_index < 0 || ris_ev.ris_index >= static_cast<int>(ctx.panels.size())) return outcome;
    const RisPanel& panel = ctx.panels[static_cast<size_t>(ris_ev.ris_index)];

    // specular chain from tx to the panel center, then one hop to the rx
    std::vector<CandidateEvent> pre(events.begin(), events.end() - 1);
    std::vector<Vec3> images{ctx.tx->position};
    std::vector<int> reflection_events;
    for (size_t i = 0; i < pre.size(); ++i) {
        if (pre[i].kind == InteractionKind::reflection) {
            images.push_back(mirror_point(images.back(), pre[i].plane_point, pre[i].plane_normal));
            reflection_events.push_back(static_cast<int>(i));
        } else if (pre[i].kind != InteractionKind::transmission) {
            return outcome;
        }
    }
    const size_t m = reflection_events.size();
    std::vector<Vec3> reflection_points(m);
    Vec3 cur = panel.center;
    for (size_t j = m; j-- > 0;) {
        const CandidateEvent& ev = pre[static_cast<size_t>(reflection_events[j])];
        const Vec3 img = images[j + 1];
        const Vec3 seg = img - cur;
        const double denom = dot(seg, ev.plane_normal);
        if (std::abs(denom) < 1e-15) return outcome;
        const double t = dot(ev.plane_point - cur, ev.plane_normal) / denom;
        if (!(t > 1e-12 && t < 1.0 - 1e-12)) return outcome;
        cur = cur + seg * t;
        reflection_points[j] = cur;
    }

    std::vector<Vec3> points;
    points.push_back(ctx.tx->position);
    for (const Vec3& q : reflection_points) points.push_back(q);
    points.push_back(panel.center);

    std::vector<int> leg_reflection(points.size(), -1);
    for (size_t j = 0; j < m; ++j) leg_reflection[j] = reflection_events[j];
    auto walked = rewalk(*ctx.bvh, points, pre, leg_reflection);
    if (!walked) return outcome;

    ChainResult chain = apply_chain(*ctx.scene, points, *walked);
    chain.events = std::move(*walked);

    const Vec3 d_in = chain.state.dir;  // propagation arriving at the panel
    const Vec3 to_rx = rx.position - panel.center;
    const double l2 = norm(to_rx);
    if (l2 < kGeomEps) return outcome;
    const Vec3 d_out = to_rx / l2;
    const Vec3 n = panel.normal();
    if (dot(-d_in, n) <= 1e-12 || dot(d_out, n) <= 1e-12) return outcome;  // back side

    // outgoing leg must be clear (the panel surface itself is epsilon-skipped)
    if (ctx.bvh->nearest_hit(panel.center, d_out, kGeomEps, l2 - kGeomEps)) return outcome;

    const Complex g = apply_ris_to_path(panel, d_in, d_out, ctx.wavelength);
    if (std::abs(g) == 0.0) return outcome;

    const double l1 = chain.total_length;
    const double cos_in = std::clamp(-dot(d_in, n), 0.0, 1.0);

    // polarization: an idealized phase surface scales both components by g;
    // components are carried over on the outgoing incidence basis
    const Vec3 s_in = incidence_s_hat(d_in, n);
    const Vec3 p_in = cross(s_in, d_in);
    const Jones2x2 rot = basis_rotation(chain.state, s_in, p_in);
    const Vec3 s_out = incidence_s_hat(-d_out, n);
    chain.jones = (rot * chain.jones).scaled_rows(g, g);
    chain.state.dir = d_out;
    chain.state.e_perp = s_out;

    double traversed = 0.0;
    for (const WalkEvent& ev : chain.events) traversed += ev.segment_length;
    chain.events.push_back(
        {InteractionKind::ris, ris_ev.object_index, panel.center, std::acos(cos_in), l1 - traversed, n});
    if (static_cast<int>(chain.events.size()) > ctx.options->policy.max_interactions) return outcome;
    if (!power_profile_ok(ctx, chain)) return outcome;

    const double wl = ctx.wavelength;
    const double k = 2.0 * kPi / wl;
    const double L = l1 + l2;
    const double aperture_gain = panel.size() * panel.pitch * panel.pitch / wl;
    const Complex scale = (wl / kFourPi) * aperture_gain * std::polar(1.0, -k * L) / (l1 * l2);

    PathRecord& path = outcome.path;
    path.delay = L / kSpeedOfLight;
    for (const WalkEvent& ev : chain.events)
        path.interactions.push_back(
            {ev.kind, ev.point, ev.object_index, ev.incident_angle, ev.segment_length});
    chain.total_length = L;
    finish_path(ctx, rx, chain, scale, path);
    outcome.ok = true;
    return outcome;
}

// ---------------------------------------------------------------------------
// first-order diffraction candidates

struct WedgeEdge {
    Vec3 p0, p1;       // endpoints
    Vec3 tangent;      // unit, p0 -> p1
    double length;
    Vec3 face_dir[2];  // unit, perpendicular to the edge, into each face
    Vec3 face_normal[2];
    int object_index;
    bool knife;        // boundary edge of a thin sheet
};

std::vector<WedgeEdge> collect_wedge_edges(const Scene& scene, const Bvh& bvh) {
    struct EdgeUse {
        int tri[2] = {-1, -1};
        int count = 0;
        Vec3 p0, p1;
    };
    auto key_of = [](const Vec3& a, const Vec3& b) {
        auto q = [](double v) { return static_cast<long long>(std::llround(v * 1e6)); };
        const auto ka = std::tuple{q(a.x), q(a.y), q(a.z)};
        const auto kb = std::tuple{q(b.x), q(b.y), q(b.z)};
        return ka < kb ? std::pair{ka, kb} : std::pair{kb, ka};
    };

    std::map<std::pair<std::tuple<long long, long long, long long>,
                       std::tuple<long long, long long, long long>>,
             EdgeUse>
        edges;
    const auto tris = bvh.triangles();
    for (size_t ti = 0; ti < tris.size(); ++ti) {
        if (scene.objects()[static_cast<size_t>(tris[ti].object_index)].is_ris) continue;
        const Triangle& t = tris[ti].tri;
        const Vec3 vs[3] = {t.a, t.b, t.c};
        for (int e = 0; e < 3; ++e) {
            const Vec3& a = vs[e];
            const Vec3& b = vs[(e + 1) % 3];
            EdgeUse& use = edges[key_of(a, b)];
            if (use.count < 2) use.tri[use.count] = static_cast<int>(ti);
            if (use.count == 0) {
                use.p0 = a;
                use.p1 = b;
            }
            ++use.count;
        }
    }

    std::vector<WedgeEdge> out;
    for (const auto& [key, use] : edges) {
        if (use.count > 2) continue;
        WedgeEdge w;
        w.p0 = use.p0;
        w.p1 = use.p1;
        const Vec3 d = w.p1 - w.p0;
        w.length = norm(d);
        if (w.length < 10.0 * kGeomEps) continue;
        w.tangent = d / w.length;
        w.object_index = tris[static_cast<size_t>(use.tri[0])].object_index;
        w.knife = use.count == 1;

        auto face_geometry = [&](int tri_index, Vec3& dir, Vec3& normal) {
            const Triangle& t = tris[static_cast<size_t>(tri_index)].tri;
            normal = t.geometric_normal();
            // vertex opposite the edge
            const Vec3 vs[3] = {t.a, t.b, t.c};
            Vec3 opp = vs[0];
            double best = -1.0;
            for (const Vec3& v : vs) {
                const double dist =
                    norm_sq(v - w.p0 - w.tangent * dot(v - w.p0, w.tangent));
                if (dist > best) {
                    best = dist;
                    opp = v;
                }
            }
            const Vec3 rel = opp - w.p0;
            dir = normalized(rel - w.tangent * dot(rel, w.tangent));
        };
        face_geometry(use.tri[0], w.face_dir[0], w.face_normal[0]);
        if (use.count == 2) {
            face_geometry(use.tri[1], w.face_dir[1], w.face_normal[1]);
            // coplanar pair: interior tessellation edge, not a wedge
            if (std::abs(dot(w.face_normal[0], w.face_normal[1])) > 1.0 - 1e-9 &&
                std::abs(dot(w.face_normal[0], w.face_dir[1])) < 1e-9)
                continue;
        } else {
            w.face_dir[1] = w.face_dir[0];
            w.face_normal[1] = w.face_normal[0];
        }
        out.push_back(w);
    }
    return out;
}

std::optional<PathRecord> diffraction_path(const RefineContext& ctx, const WedgeEdge& edge,
                                           int rx_index) {
    const Terminal& rx = ctx.receivers[static_cast<size_t>(rx_index)];
    const Vec3 txp = ctx.tx->position;
    const Vec3 rxp = rx.position;

    // Fermat point on the edge line in cylindrical coordinates
    const double a1 = dot(txp - edge.p0, edge.tangent);
    const double a2 = dot(rxp - edge.p0, edge.tangent);
    const double r1 = norm(txp - edge.p0 - edge.tangent * a1);
    const double r2 = norm(rxp - edge.p0 - edge.tangent * a2);
    if (r1 < 10.0 * kGeomEps || r2 < 10.0 * kGeomEps) return std::nullopt;
    const double t_star = (a1 * r2 + a2 * r1) / (r1 + r2);
    if (!(t_star > 10.0 * kGeomEps && t_star < edge.length - 10.0 * kGeomEps)) return std::nullopt;
    const Vec3 q = edge.p0 + edge.tangent * t_star;

    const Vec3 to_q = q - txp;
    const double s_inc = norm(to_q);
    const Vec3 d_in = to_q / s_inc;
    const Vec3 from_q = rxp - q;
    const double s_dif = norm(from_q);
    const Vec3 d_out = from_q / s_dif;

    // wedge frame: air region must span (0, n pi) counterclockwise from the
    // o-face about the edge tangent; orient using the incident side
    const Vec3 u_a = edge.face_dir[0];
    const Vec3 u_b = edge.face_dir[1];
    Vec3 e_dir = edge.tangent;
    auto angle_about = [&](const Vec3& axis, const Vec3& ref, const Vec3& v) {
        const Vec3 w = cross(axis, ref);
        const Vec3 p = v - axis * dot(v, axis);
        double ang = std::atan2(dot(p, w), dot(p, ref));
        if (ang < 0.0) ang += 2.0 * kPi;
        return ang;
    };

    Vec3 face_o = u_a;
    double exterior;
    {
        const double gamma_b = edge.knife ? 2.0 * kPi : angle_about(e_dir, u_a, u_b);
        const double gamma_tx = angle_about(e_dir, u_a, -d_in);
        if (gamma_tx <= gamma_b) {
            exterior = gamma_b;
        } else {
            // air span runs from face b back to face a when measured about +tangent;
            // flip the axis so it becomes (0, exterior) from face b
            e_dir = -e_dir;
            face_o = u_b;
            exterior = 2.0 * kPi - gamma_b;
        }
    }
    if (edge.knife) exterior = 2.0 * kPi;
    if (exterior <= kPi + 1e-6) return std::nullopt;  // flat or concave: no diffraction

    if (!edge.knife) {
        // silhouette test: the faces straddle the plane through tx, q, rx
        const Vec3 nu = cross(q - txp, rxp - txp);
        if (norm(nu) < 1e-12) return std::nullopt;
        if (dot(nu, u_a) * dot(nu, u_b) >= 0.0) return std::nullopt;
    }

    // both hops must be unobstructed
    if (ctx.bvh->nearest_hit(txp, d_in, kGeomEps, s_inc - 10.0 * kGeomEps)) return std::nullopt;
    if (ctx.bvh->nearest_hit(q, d_out, 10.0 * kGeomEps, s_dif - kGeomEps)) return std::nullopt;

    WedgeGeometry wedge;
    wedge.edge_point = q;
    wedge.edge_dir = e_dir;
    wedge.face_o_dir = face_o;
    wedge.interior_angle = 2.0 * kPi - exterior;

    DiffractionCoeff coeff;
    try {
        coeff = utd_diffraction_coeff(wedge, d_in, d_out, s_inc, s_dif, ctx.wavelength);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }

    // polarization transfer in edge-fixed coordinates
    ChainResult chain;
    chain.depart_dir = d_in;
    chain.state.dir = d_in;
    chain.state.e_perp = phi_hat(d_in);
    chain.jones = Jones2x2::rotation(1.0, 0.0, 0.0, 1.0);

    const Vec3 phi_in = normalized(cross(e_dir, d_in));
    const Vec3 beta_in = cross(phi_in, d_in);
    const Jones2x2 rot = basis_rotation(chain.state, phi_in, beta_in);
    // slots (perp, par) = (phi, beta): hard acts on phi, soft on beta
    chain.jones = (rot * chain.jones).scaled_rows(coeff.hard, coeff.soft);
    const Vec3 phi_out = normalized(cross(e_dir, d_out));
    chain.state.dir = d_out;
    chain.state.e_perp = phi_out;
    chain.total_length = s_inc + s_dif;

    const double cos_inc_face = std::clamp(std::abs(dot(d_in, edge.face_normal[0])), 0.0, 1.0);
    chain.events.push_back({InteractionKind::diffraction, edge.object_index, q,
                            std::acos(std::clamp(std::sqrt(1.0 - cos_inc_face * cos_inc_face), -1.0, 1.0)),
                            s_inc, edge.face_normal[0]});

    const double wl = ctx.wavelength;
    const double k = 2.0 * kPi / wl;
    // UTD spherical-wave amplitude: (1/s') * D * sqrt(s'/(s(s'+s)))
    // (the D returned above already carries the spreading factor)
    const Complex scale = (wl / kFourPi) * std::polar(1.0, -k * chain.total_length) / s_inc;

    PathRecord path;
    path.delay = chain.total_length / kSpeedOfLight;
    path.interactions.push_back({InteractionKind::diffraction, q, edge.object_index,
                                 chain.events.back().incident_angle, s_inc});
    finish_path(ctx, rx, chain, scale, path);
    return path;
}

}  // namespace

TraceResult trace_paths(const Scene& scene, const Bvh& bvh, const Terminal& tx,
                        std::span<const Terminal> receivers, std::span<const Vec3> launch_directions,
                        const TraceOptions& options, std::span<const RisPanel> ris_panels) {
    const auto t_begin = std::chrono::steady_clock::now();
    options.policy.validate();
    if (!(options.capture_radius > 0.0)) throw std::invalid_argument("capture radius must be > 0");
    tx.validate();

    TraceResult result;
    result.paths_per_rx.resize(receivers.size());
    result.stats.rays_launched = launch_directions.size();

    MarchContext mctx{&scene, &bvh, &tx, receivers, ris_panels, &options, scene.wavelength()};

    // fixed-size blocks keep candidate discovery order independent of threads
    const int block = std::max(1, options.block_size);
    const int n_blocks = static_cast<int>((launch_directions.size() + block - 1) / block);
    std::vector<BlockOutput> outputs(static_cast<size_t>(std::max(n_blocks, 0)));

    int n_threads = options.threads > 0 ? options.threads
                                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    n_threads = std::min(n_threads, std::max(n_blocks, 1));

    std::atomic<int> next_block{0};
    auto worker = [&]() {
        while (true) {
            const int b = next_block.fetch_add(1);
            if (b >= n_blocks) break;
            const size_t begin = static_cast<size_t>(b) * static_cast<size_t>(block);
            const size_t end = std::min(begin + static_cast<size_t>(block), launch_directions.size());
            for (size_t i = begin; i < end; ++i)
                march_one_ray(mctx, launch_directions[i], outputs[static_cast<size_t>(b)]);
        }
    };
    if (n_threads == 1 || n_blocks <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    // deterministic merge in block order; first occurrence wins
    std::unordered_map<CandidateKey, bool, CandidateKeyHash> seen;
    std::vector<Candidate> candidates;
    // the direct signature is always nominated
    for (size_t r = 0; r < receivers.size(); ++r) {
        candidates.push_back({static_cast<int>(r), {}});
        seen[{static_cast<int>(r), ""}] = true;
    }
    for (BlockOutput& out : outputs) {
        result.stats.segments_traced += out.segments;
        for (Candidate& c : out.candidates) {
            CandidateKey key{c.rx, pack_events(c.events)};
            if (seen.emplace(std::move(key), true).second) candidates.push_back(std::move(c));
        }
        out.candidates.clear();
    }

    RefineContext rctx{&scene, &bvh, &tx, receivers, ris_panels, &options, scene.wavelength()};

    std::vector<std::vector<PathRecord>>& paths = result.paths_per_rx;
    for (const Candidate& c : candidates) {
        RefineOutcome outcome;
        if (!c.events.empty() && c.events.back().kind == InteractionKind::ris)
            outcome = refine_ris(rctx, c.rx, c.events);
        else
            outcome = refine_specular(rctx, c.rx, c.events);
        if (outcome.ok) paths[static_cast<size_t>(c.rx)].push_back(std::move(outcome.path));
    }

    if (options.enable_diffraction && options.policy.max_interactions >= 1 && !bvh.empty()) {
        const std::vector<WedgeEdge> edges = collect_wedge_edges(scene, bvh);
        for (size_t r = 0; r < receivers.size(); ++r)
            for (const WedgeEdge& edge : edges)
                if (auto path = diffraction_path(rctx, edge, static_cast<int>(r)))
                    paths[r].push_back(std::move(*path));
    }

    // merge duplicates by signature and sort
    for (std::vector<PathRecord>& list : paths) {
        std::stable_sort(list.begin(), list.end(), [](const PathRecord& a, const PathRecord& b) {
            return a.signature() < b.signature();
        });
        list.erase(std::unique(list.begin(), list.end(),
                               [](const PathRecord& a, const PathRecord& b) {
                                   return a.signature() == b.signature();
                               }),
                   list.end());
    }

    result.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    return result;
}

}  // namespace emtrace
