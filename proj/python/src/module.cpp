#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shssa/decomposition.hpp"
#include "shssa/embedding.hpp"
#include "shssa/errors.hpp"
#include "shssa/forecast.hpp"
#include "shssa/parest.hpp"
#include "shssa/reconstruction.hpp"
#include "shssa/shape.hpp"
#include "shssa/store.hpp"

namespace py = pybind11;
using namespace shssa;

namespace {

BoolGrid to_grid(const py::array_t<bool, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw ValidationError("mask", "mask must be two-dimensional");
    auto r = a.unchecked<2>();
    BoolGrid g(r.shape(0), r.shape(1));
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
        for (py::ssize_t j = 0; j < r.shape(1); ++j) g(i, j) = r(i, j);
    return g;
}

py::array_t<bool> from_grid(const BoolGrid& g) {
    py::array_t<bool> a({g.rows(), g.cols()});
    auto w = a.mutable_unchecked<2>();
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) w(i, j) = g(i, j);
    return a;
}

// Real arrays for real plans, complex otherwise.
py::object out(const EmbeddingPlan& p, const CMatrix& m) {
    if (p.field == Field::real) return py::cast(RMatrix(m.real()));
    return py::cast(m);
}

py::object out(const EmbeddingPlan& p, const CVector& v) {
    if (p.field == Field::real) return py::cast(RVector(v.real()));
    return py::cast(v);
}

py::list objects(const EmbeddingPlan& p, const CMatrix& grid) {
    py::list l;
    if (p.is_series() || p.variant == Variant::mosaic)
        for (const auto& s : grid_to_series(p, grid)) l.append(out(p, s));
    else
        for (const auto& a : grid_to_arrays(p, grid)) l.append(out(p, a));
    return l;
}

std::vector<int> union_of(const std::string& spec) {
    std::vector<int> idx;
    for (const auto& g : parse_groups(spec).groups)
        for (int i : g.indices)
            if (std::find(idx.begin(), idx.end(), i - 1) == idx.end()) idx.push_back(i - 1);
    return idx;
}

py::dict root_dict(const RootEstimate& r) {
    py::dict d;
    d["period"] = r.period;
    d["rate"] = r.rate;
    d["modulus"] = r.modulus;
    d["argument"] = r.argument;
    d["root"] = r.root;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shaped singular spectrum analysis";

    static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
    static py::exception<ComputeError> compute(m, "ComputeError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ValidationError& e) {
            py::set_error(validation, (e.code() + ": " + e.what()).c_str());
        } catch (const ComputeError& e) {
            py::set_error(compute, (e.code() + ": " + e.what()).c_str());
        }
    });

    py::class_<EmbeddingPlan, std::shared_ptr<EmbeddingPlan>>(m, "Plan")
        .def_property_readonly("variant", [](const EmbeddingPlan& p) { return variant_name(p.variant); })
        .def_property_readonly("is_complex", [](const EmbeddingPlan& p) { return p.field == Field::complex; })
        .def_property_readonly("L", &EmbeddingPlan::L)
        .def_property_readonly("K", &EmbeddingPlan::K)
        .def_property_readonly("excluded", [](const EmbeddingPlan& p) { return p.excluded.size(); })
        .def_property_readonly("weights", [](const EmbeddingPlan& p) { return p.weights; })
        .def("matvec", [](const EmbeddingPlan& p, const CVector& v) { return traj_matvec(p, v); })
        .def("adjoint_matvec", [](const EmbeddingPlan& p, const CVector& u) { return traj_adjoint_matvec(p, u); })
        .def("materialize", [](const EmbeddingPlan& p) { return materialize(p); });

    // Plans are immutable once built; the const is dropped only for the holder type.
    auto hold = [](PlanPtr p) { return std::const_pointer_cast<EmbeddingPlan>(p); };

    m.def("plan_1d", [hold](const RVector& x, int L) { return hold(plan_1d(x, L)); }, py::arg("x"), py::arg("L"));
    m.def(
        "plan_mssa",
        [hold](const std::vector<RVector>& xs, int L, bool normalize, const std::string& packing) {
            MssaPacking pk = packing == "1d" ? MssaPacking::oned : MssaPacking::twod;
            if (packing != "1d" && packing != "2d")
                throw ValidationError("packing", "packing must be '1d' or '2d'");
            return hold(plan_mssa(xs, L, pk, {}, normalize));
        },
        py::arg("series"), py::arg("L"), py::arg("normalize") = false, py::arg("packing") = "2d");
    m.def("plan_cssa", [hold](const CVector& z, int L) { return hold(plan_cssa(z, L)); }, py::arg("z"), py::arg("L"));
    m.def("plan_2d", [hold](const RMatrix& x, int Lx, int Ly) { return hold(plan_2d(x, Lx, Ly)); }, py::arg("x"),
          py::arg("Lx"), py::arg("Ly"));
    m.def(
        "plan_shaped",
        [hold](const py::array& x, const py::array_t<bool>& window, std::optional<py::array_t<bool>> mask) {
            Shape w = Shape::from_mask(to_grid(window));
            BoolGrid extra = mask ? to_grid(*mask) : BoolGrid();
            if (py::isinstance<py::array_t<std::complex<double>>>(x) || x.dtype().kind() == 'c')
                return hold(plan_shaped(x.cast<CMatrix>(), w, extra));
            return hold(plan_shaped(x.cast<RMatrix>(), w, extra));
        },
        py::arg("x"), py::arg("window"), py::arg("mask") = py::none());
    m.def("circle_mask", [](int R) { return from_grid(circle_mask(R).to_mask()); }, py::arg("R"));
    m.def("triangle_mask", [](int side) { return from_grid(triangle_mask(side).to_mask()); }, py::arg("side"));

    py::class_<Decomposition>(m, "Decomposition")
        .def_property_readonly("plan", [hold](const Decomposition& d) { return hold(d.plan_ptr()); })
        .def_property_readonly("method", [](const Decomposition& d) { return method_name(d.method()); })
        .def_property_readonly("sigma", [](const Decomposition& d) { return d.sigma(); })
        .def_property_readonly("U", [](const Decomposition& d) { return d.U(); })
        .def_property_readonly("V", [](const Decomposition& d) { return d.V(); })
        .def("__len__", &Decomposition::size)
        .def("numeric_rank", [](const Decomposition& d, double eps) { return numeric_rank(d, eps); },
             py::arg("eps") = -1.0)
        .def("extend", [](Decomposition& d, int neig) { extend(d, neig); }, py::arg("neig"))
        .def("save", [](const Decomposition& d, const std::string& dir) { save_decomposition(d, dir, {}); },
             py::arg("path"));

    m.def(
        "decompose",
        [](std::shared_ptr<EmbeddingPlan> p, int neig, const std::string& method, double rank_eps) {
            DecomposeOptions o;
            o.method = parse_method(method);
            o.rank_eps = rank_eps;
            py::gil_scoped_release release;
            return decompose(p, neig, o);
        },
        py::arg("plan"), py::arg("neig"), py::arg("method") = "auto", py::arg("rank_eps") = 1e-9);
    m.def("load", [](const std::string& dir) { return load_decomposition(dir); }, py::arg("path"));

    m.def(
        "reconstruct",
        [](Decomposition& d, const std::string& groups, bool original, bool residual) {
            GroupSpec g = parse_groups(groups);
            g.add_original = original;
            g.add_residual = residual;
            ReconstructionSet r = reconstruct(d, g);
            py::dict res;
            for (const auto& c : r.items) res[py::str(c.name)] = objects(*r.plan, c.grid);
            return res;
        },
        py::arg("decomposition"), py::arg("groups"), py::arg("original") = false, py::arg("residual") = false);
    m.def(
        "wcor",
        [](Decomposition& d, const std::string& groups) {
            std::vector<std::vector<int>> gs;
            GroupSpec g = parse_groups(groups);
            int need = max_index(g);
            if (need > d.size()) extend(d, need);
            for (const auto& grp : g.groups) {
                std::vector<int> idx;
                for (int i : grp.indices) idx.push_back(i - 1);
                gs.push_back(idx);
            }
            return wcor(d, gs);
        },
        py::arg("decomposition"), py::arg("groups"));
    m.def(
        "forecast",
        [](const Decomposition& d, const std::string& group, int horizon, const std::string& method) {
            ForecastKind k;
            ForecastDir dir;
            if (method == "recurrent-column") k = ForecastKind::recurrent, dir = ForecastDir::column;
            else if (method == "recurrent-row") k = ForecastKind::recurrent, dir = ForecastDir::row;
            else if (method == "vector-column") k = ForecastKind::vector, dir = ForecastDir::column;
            else if (method == "vector-row") k = ForecastKind::vector, dir = ForecastDir::row;
            else throw ValidationError("forecast_method", "unknown forecast method '" + method + "'");
            ForecastResult f = forecast(d, union_of(group), horizon, k, dir);
            py::list l;
            for (const auto& v : f.forecast) l.append(out(d.plan(), v));
            return l;
        },
        py::arg("decomposition"), py::arg("group"), py::arg("horizon"), py::arg("method") = "recurrent-column");
    m.def(
        "esprit",
        [](const Decomposition& d, const std::string& group, const std::string& method) {
            py::list l;
            for (const auto& r : esprit_1d(d, union_of(group), parse_esprit_method(method))) l.append(root_dict(r));
            return l;
        },
        py::arg("decomposition"), py::arg("group"), py::arg("method") = "ls");
    m.def(
        "esprit_2d",
        [](const Decomposition& d, const std::string& group, const std::string& pairing) {
            py::list l;
            for (const auto& p : esprit_2d(d, union_of(group), parse_pairing_method(pairing)))
                l.append(py::make_tuple(root_dict(p.x), root_dict(p.y)));
            return l;
        },
        py::arg("decomposition"), py::arg("group"), py::arg("pairing") = "esprit2d");
}
