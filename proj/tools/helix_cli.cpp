#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "helix/frenet.hpp"
#include "helix/projection.hpp"
#include "helix/slant_helix.hpp"
#include "helix/spherical.hpp"
#include "helix/svg.hpp"
#include "helix/textio.hpp"
#include "helix/verify.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kSignVariant = "z-minus"; // frozen closed-form variant
constexpr double kPi = std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerifyFail = 3;

struct ThetaRange {
    double lo = 0.05;
    double hi = kPi - 0.05;
    int count = 500;
};

ThetaRange parse_theta(const std::string& s) {
    ThetaRange r;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw helix::InvalidParams("theta range must be lo:hi:count");
    try {
        r.lo = std::stod(s.substr(0, c1));
        r.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        r.count = std::stoi(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw helix::InvalidParams("theta range must be lo:hi:count with numeric fields");
    }
    return r;
}

std::pair<long long, long long> parse_ratio(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos)
        throw helix::InvalidParams("ratio must be p/q");
    try {
        return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    } catch (const std::exception&) {
        throw helix::InvalidParams("ratio must be p/q with integer fields");
    }
}

double env_tol_scale() {
    if (const char* v = std::getenv("HELIX_TOL")) {
        try {
            const double s = std::stod(v);
            if (s > 0.0) return s;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid HELIX_TOL\n";
    }
    return 1.0;
}

struct CommonOpts {
    std::optional<double> a;
    std::string ratio;
    double A = 1.0;
    double B = 0.0;
    std::string theta;
    std::string out;
};

void add_param_flags(CLI::App* cmd, CommonOpts& o, bool with_theta) {
    cmd->add_option("--a", o.a, "slant constant a (nonzero)");
    cmd->add_option("--ratio", o.ratio, "closure ratio p/q (sets a = a_for_ratio(p,q))");
    cmd->add_option("--A", o.A, "sphericity coefficient A (default 1)");
    cmd->add_option("--B", o.B, "sphericity coefficient B (default 0)");
    if (with_theta)
        cmd->add_option("--theta", o.theta, "sample range lo:hi:count (default 0.05:pi-0.05:500)");
    cmd->add_option("--out", o.out, "output path (default stdout; render: file prefix)");
}

helix::SlantHelixParams resolve_params(const CommonOpts& o) {
    double a;
    if (!o.ratio.empty()) {
        if (o.a)
            throw helix::InvalidParams("give either --a or --ratio, not both");
        const auto [p, q] = parse_ratio(o.ratio);
        a = helix::a_for_ratio(p, q);
    } else if (o.a) {
        a = *o.a;
    } else {
        throw helix::InvalidParams("one of --a or --ratio is required");
    }
    return helix::SlantHelixParams::make(a, o.A, o.B);
}

std::vector<double> make_grid(const ThetaRange& r) {
    if (r.count < 16)
        throw helix::InvalidParams("sample count must be >= 16");
    if (!(r.lo < r.hi))
        throw helix::InvalidParams("theta range is empty (need lo < hi)");
    std::vector<double> g(static_cast<std::size_t>(r.count));
    for (int i = 0; i < r.count; ++i)
        g[static_cast<std::size_t>(i)] =
            r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(r.count - 1);
    return g;
}

void check_frenet_domain(const helix::SlantHelixParams& p, const ThetaRange& r) {
    if (r.lo < p.theta_lo || r.hi > p.theta_hi)
        throw helix::InvalidParams(
            "theta range must lie within the generator domain [" +
            helix::fmt_double(p.theta_lo) + ", " + helix::fmt_double(p.theta_hi) +
            "] for Frenet-touching commands");
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw helix::InvalidParams("cannot open output path: " + path);
    f << content;
    if (!f)
        throw helix::InvalidParams("write failed: " + path);
}

std::string csv_header_comment(const helix::SlantHelixParams& p) {
    std::string s;
    s += "# helixgeom " + std::string(kVersion) + "\n";
    s += "# params: a=" + helix::fmt_double(p.a) + " A=" + helix::fmt_double(p.A) +
         " B=" + helix::fmt_double(p.B) + "\n";
    s += "# sign-variant: " + std::string(kSignVariant) + "\n";
    return s;
}

json params_json(const helix::SlantHelixParams& p) {
    return json{{"a", p.a}, {"A", p.A}, {"B", p.B}};
}

// ---------------------------------------------------------------------------

int cmd_generate(const CommonOpts& o) {
    const helix::SlantHelixParams params = resolve_params(o);
    const ThetaRange range = o.theta.empty() ? ThetaRange{} : parse_theta(o.theta);
    check_frenet_domain(params, range);
    const std::vector<double> grid = make_grid(range);

    // widened-domain canonical evaluator so sigma's stencil stays inside
    const helix::CurveEvaluator canon =
        helix::family_curve(params, range.lo - 0.05, range.hi + 0.05);

    std::string out = csv_header_comment(params);
    out += "# theta: " + helix::fmt_double(range.lo) + ":" + helix::fmt_double(range.hi) +
           ":" + std::to_string(range.count) + "\n";
    out += "theta,s,x,y,z,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,sigma\n";

    double s = 0.0;
    double prev = grid.front();
    for (double th : grid) {
        if (th > prev) s += helix::arc_length(params, prev, th);
        prev = th;
        const helix::Vec3 p = helix::position(params, th);
        const helix::Frame fr = helix::frame_closed(params, th);
        std::string kappa = "nan", tau = "nan", sig = "nan";
        try {
            kappa = helix::fmt_double(helix::curvature_closed(params, th));
        } catch (const helix::Error&) {
        }
        try {
            tau = helix::fmt_double(helix::torsion_closed(params, th));
        } catch (const helix::Error&) {
        }
        // sigma in the frozen orientation convention; degenerate stencils -> nan
        bool guarded = true;
        for (double d : {-2e-3, 0.0, 2e-3})
            if (std::abs(helix::curvature_denominator(params, th + d)) < 0.02) guarded = false;
        if (guarded) {
            try {
                const double t =
                    helix::family_parameter(params, range.lo - 0.05, range.hi + 0.05, th);
                const helix::FrenetData fd = helix::frenet_apparatus(canon, t);
                const double sgn =
                    helix::dot(fd.N, helix::frame_closed(params, th).N) >= 0 ? 1.0 : -1.0;
                sig = helix::fmt_double(sgn * helix::sigma(canon, t));
            } catch (const helix::Error&) {
            }
        }
        out += helix::fmt_double(th) + "," + helix::fmt_double(s);
        for (double v : {p.x, p.y, p.z, fr.T.x, fr.T.y, fr.T.z, fr.N.x, fr.N.y, fr.N.z,
                         fr.B.x, fr.B.y, fr.B.z})
            out += "," + helix::fmt_double(v);
        out += "," + kappa + "," + tau + "," + sig + "\n";
    }
    write_output(o.out, out);
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, int samples, double perturb_z) {
    helix::VerifyOptions vo;
    vo.params = resolve_params(o);
    if (!o.theta.empty()) {
        const ThetaRange r = parse_theta(o.theta);
        check_frenet_domain(vo.params, r);
        vo.params.theta_lo = r.lo;
        vo.params.theta_hi = r.hi;
        vo.samples = static_cast<std::size_t>(r.count);
    } else {
        vo.samples = static_cast<std::size_t>(samples);
    }
    vo.tol_scale = env_tol_scale();
    vo.perturb_z = perturb_z;

    const std::vector<helix::CheckResult> checks = helix::run_verification(vo);

    json doc;
    doc["schema"] = "helix-verify/1";
    doc["params"] = params_json(vo.params);
    doc["samples"] = vo.samples;
    doc["tol_scale"] = vo.tol_scale;
    if (perturb_z != 1.0) doc["perturb_z"] = perturb_z;
    doc["checks"] = json::array();
    for (const auto& c : checks)
        doc["checks"].push_back(json{{"check", c.check},
                                     {"max_error", c.max_error},
                                     {"tolerance", c.tolerance},
                                     {"pass", c.pass}});
    const bool ok = helix::all_pass(checks);
    doc["all_pass"] = ok;
    write_output(o.out, doc.dump(2) + "\n");
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_closure(const CommonOpts& o, int max_den, double tol) {
    const helix::SlantHelixParams params = resolve_params(o);
    const helix::ClosureResult res = helix::is_closed(params, max_den, tol);

    json doc;
    doc["schema"] = "helix-closure/1";
    doc["a"] = params.a;
    doc["ratio"] = res.ratio;
    doc["rational"] = res.rational;
    doc["best"] = std::to_string(res.p) + "/" + std::to_string(res.q);
    doc["error"] = res.error;
    if (res.rational) {
        doc["period"] = std::to_string(2 * res.q) + "*pi";
        doc["theta_period"] = res.theta_period;
        double gap = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double th =
                params.theta_lo + (params.theta_hi - params.theta_lo) * i / 99.0;
            gap = std::max(gap, (helix::position(params, th + res.theta_period) -
                                 helix::position(params, th))
                                    .norm());
        }
        doc["probe_gap"] = gap;
    }
    write_output(o.out, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_render(const CommonOpts& o, const std::string& views_str,
               const std::string& objects_str) {
    const helix::SlantHelixParams params = resolve_params(o);
    ThetaRange range = o.theta.empty() ? ThetaRange{.lo = 0.05, .hi = kPi - 0.05, .count = 800}
                                       : parse_theta(o.theta);
    // closed forms are entire in theta, so rendering may span closure periods
    const std::vector<double> grid = make_grid(range);

    std::vector<helix::ViewPlane> views;
    for (const auto& v : {std::string("xy"), std::string("xz"), std::string("yz")}) {
        if (views_str.find(v) != std::string::npos)
            views.push_back(v == "xy" ? helix::ViewPlane::XY
                                      : (v == "xz" ? helix::ViewPlane::XZ : helix::ViewPlane::YZ));
    }
    if (views.empty())
        throw helix::InvalidParams("no valid views: expected a subset of xy,xz,yz");

    std::vector<helix::RenderObject> objs;
    const auto want = [&](const char* name) {
        return objects_str.find(name) != std::string::npos;
    };
    if (want("curve")) {
        helix::RenderObject obj{"curve", {}};
        for (double th : grid) obj.points.push_back(helix::position(params, th));
        objs.push_back(std::move(obj));
    }
    for (const char* name : {"T", "N", "B"}) {
        if (!want(name)) continue;
        helix::RenderObject obj{name, {}};
        for (double th : grid) {
            const helix::Frame fr = helix::frame_closed(params, th);
            obj.points.push_back(std::string(name) == "T" ? fr.T
                                 : std::string(name) == "N" ? fr.N : fr.B);
        }
        objs.push_back(std::move(obj));
    }
    if (want("Y")) {
        helix::RenderObject obj{"Y", {}};
        for (double th : grid) obj.points.push_back(helix::y_indicatrix(params, th));
        objs.push_back(std::move(obj));
    }
    if (objs.empty())
        throw helix::InvalidParams("no valid objects: expected a subset of curve,T,N,B,Y");

    const std::string prefix = o.out.empty() ? "helix" : o.out;
    for (helix::ViewPlane v : views) {
        const std::string path = prefix + "_" + helix::view_name(v) + ".svg";
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw helix::InvalidParams("cannot open output path: " + path);
        f << helix::render_svg(objs, v);
        if (!f)
            throw helix::InvalidParams("write failed: " + path);
    }
    return kExitOk;
}

int cmd_reconstruct(const CommonOpts& o, bool demo_circle) {
    const double tol_scale = env_tol_scale();
    if (demo_circle) {
        // constant intrinsic curvature closes a circle; sanity case for the
        // planar pipeline
        const int n = 2001;
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i) s[i] = 4.0 * kPi * i / (n - 1);
        const auto samples =
            helix::reconstruct_plane([](double) { return 0.5; }, s, helix::QuadConfig{});
        std::string csv = "# helixgeom " + std::string(kVersion) + "\n";
        csv += "# mode: demo-circle (kappa = 0.5 over [0, 4*pi])\n";
        csv += "s,x,y,phi,kappa\n";
        for (const auto& ps : samples)
            csv += helix::fmt_double(ps.s) + "," + helix::fmt_double(ps.x) + "," +
                   helix::fmt_double(ps.y) + "," + helix::fmt_double(ps.phi) + "," +
                   helix::fmt_double(ps.kappa) + "\n";
        const double gap = std::hypot(samples.back().x - samples.front().x,
                                      samples.back().y - samples.front().y);
        json doc;
        doc["schema"] = "helix-reconstruct/1";
        doc["mode"] = "demo-circle";
        doc["closure_gap"] = gap;
        doc["tolerance"] = 1e-6 * tol_scale;
        doc["pass"] = gap < 1e-6 * tol_scale;
        if (!o.out.empty()) {
            write_output(o.out, csv);
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cout << csv << doc.dump(2) << "\n";
        }
        return doc["pass"].get<bool>() ? kExitOk : kExitVerifyFail;
    }

    const helix::SlantHelixParams params = resolve_params(o);
    ThetaRange range = o.theta.empty() ? ThetaRange{.lo = 0.05, .hi = kPi - 0.05, .count = 2000}
                                       : parse_theta(o.theta);
    check_frenet_domain(params, range);
    const std::vector<double> grid = make_grid(range);

    json doc;
    doc["schema"] = "helix-reconstruct/1";
    doc["params"] = params_json(params);
    doc["sign_variant"] = kSignVariant;
    doc["samples"] = grid.size();

    std::vector<helix::Vec3> lifted;
    try {
        lifted = helix::lift_to_sphere(params, grid);
    } catch (const helix::SphereFitFailed& e) {
        doc["error"] = e.what();
        doc["sphere_fit_residual"] = e.residual;
        std::cout << doc.dump(2) << "\n";
        std::cerr << "reconstruct: " << e.what() << "\n";
        return kExitVerifyFail;
    }

    double max_dev = 0.0;
    std::string csv = csv_header_comment(params);
    csv += "theta,x,y,z,deviation\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double dev = (lifted[i] - helix::position(params, grid[i])).norm();
        max_dev = std::max(max_dev, dev);
        csv += helix::fmt_double(grid[i]) + "," + helix::fmt_double(lifted[i].x) + "," +
               helix::fmt_double(lifted[i].y) + "," + helix::fmt_double(lifted[i].z) + "," +
               helix::fmt_double(dev) + "\n";
    }
    doc["max_deviation"] = max_dev;

    if (!o.out.empty()) {
        write_output(o.out, csv);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << csv << doc.dump(2) << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical slant helix toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts gen_o, ver_o, clo_o, ren_o, rec_o;
    int ver_samples = 400;
    double ver_perturb = 1.0;
    int clo_maxden = 64;
    double clo_tol = 1e-9;
    std::string ren_views = "xy,xz,yz";
    std::string ren_objects = "curve,T,N,B,Y";
    bool rec_demo = false;

    CLI::App* gen = app.add_subcommand("generate", "emit CSV samples of the family member");
    add_param_flags(gen, gen_o, true);

    CLI::App* ver = app.add_subcommand("verify", "run the invariant checks, emit a JSON report");
    add_param_flags(ver, ver_o, true);
    ver->add_option("--samples", ver_samples, "grid size (default 400)");
    ver->add_option("--perturb-z", ver_perturb,
                    "fault injection: scale the generator's z output (default 1)");

    CLI::App* clo = app.add_subcommand("closure", "rational-closure analysis of the ratio");
    add_param_flags(clo, clo_o, false);
    clo->add_option("--max-den", clo_maxden, "largest denominator considered (default 64)");
    clo->add_option("--tol", clo_tol, "rationality tolerance (default 1e-9)");

    CLI::App* ren = app.add_subcommand("render", "orthographic SVG projections");
    add_param_flags(ren, ren_o, true);
    ren->add_option("--views", ren_views, "comma list from xy,xz,yz (default all)");
    ren->add_option("--objects", ren_objects, "comma list from curve,T,N,B,Y (default all)");

    CLI::App* rec = app.add_subcommand("reconstruct", "quadrature reconstruction + comparison");
    add_param_flags(rec, rec_o, true);
    rec->add_flag("--demo-circle", rec_demo, "constant-curvature planar sanity mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints message/help
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_o);
        if (ver->parsed()) return cmd_verify(ver_o, ver_samples, ver_perturb);
        if (clo->parsed()) return cmd_closure(clo_o, clo_maxden, clo_tol);
        if (ren->parsed()) return cmd_render(ren_o, ren_views, ren_objects);
        if (rec->parsed()) return cmd_reconstruct(rec_o, rec_demo);
    } catch (const helix::InvalidParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const helix::InvalidRatio& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const helix::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
