#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curveflow/analytic.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/io.hpp"
#include "curveflow/monitor.hpp"
#include "curveflow/soliton.hpp"

namespace py = pybind11;
using namespace curveflow;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DiscreteCurve to_curve(const Array& points, bool closed) {
    if (points.ndim() != 2 || points.shape(1) != 2) throw py::value_error("points must have shape (N, 2)");
    auto p = points.unchecked<2>();
    std::vector<Vec2> nodes(static_cast<std::size_t>(p.shape(0)));
    for (py::ssize_t i = 0; i < p.shape(0); ++i) nodes[static_cast<std::size_t>(i)] = {p(i, 0), p(i, 1)};
    return DiscreteCurve(std::move(nodes), closed);
}

Array to_array(const std::vector<Vec2>& v) {
    Array out({static_cast<py::ssize_t>(v.size()), py::ssize_t{2}});
    auto o = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < v.size(); ++i) {
        o(static_cast<py::ssize_t>(i), 0) = v[i].x;
        o(static_cast<py::ssize_t>(i), 1) = v[i].y;
    }
    return out;
}

Array to_array(const std::vector<double>& v) {
    Array out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

// Structured values cross the boundary as JSON text; the Python side parses it.
Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

py::dict sample_dict(const MonitorSample& s) {
    py::dict d;
    d["t"] = s.t;
    d["L"] = s.L;
    d["A"] = s.A ? py::object(py::float_(*s.A)) : py::object(py::none());
    d["I"] = s.I ? py::object(py::float_(*s.I)) : py::object(py::none());
    d["diss"] = s.diss;
    d["Q"] = s.Q;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Curve diffusion flow and soliton diagnostics for plane curves.";

    static py::exception<Error> error(m, "CurveflowError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            // args = (message, kind)
            PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), std::string(to_string(e.kind()))).ptr());
        }
    });

    py::class_<DiscreteCurve>(m, "Curve")
        .def(py::init([](const Array& points, bool closed) { return to_curve(points, closed); }), py::arg("points"),
             py::arg("closed") = true)
        .def_property_readonly("points", [](const DiscreteCurve& c) { return to_array(c.nodes()); })
        .def_property_readonly("closed", &DiscreteCurve::closed)
        .def("reversed", &DiscreteCurve::reversed)
        .def("__len__", &DiscreteCurve::size)
        .def("__repr__", [](const DiscreteCurve& c) {
            return "<Curve N=" + std::to_string(c.size()) + (c.closed() ? " closed>" : " open>");
        });

    m.def("sample", [](const std::string& spec, std::size_t n) {
        return sample_analytic(analytic_spec_from_json(parse(spec)), n);
    }, py::arg("spec"), py::arg("n"), "Sample an analytic curve given as a JSON spec.");

    m.def("fields", [](const DiscreteCurve& c) {
        const auto f = curve_fields(c);
        py::dict d;
        d["tangent"] = to_array(f.tangent);
        d["normal"] = to_array(f.normal);
        d["kappa"] = to_array(f.kappa);
        d["kappa_s"] = to_array(f.kappa_s);
        d["kappa_ss"] = to_array(f.kappa_ss);
        d["dl"] = to_array(f.dl);
        d["s"] = to_array(f.s);
        return d;
    });
    m.def("length", &length);
    m.def("signed_area", &signed_area);
    m.def("winding_number", &winding_number);
    m.def("resample_uniform", &resample_uniform, py::arg("curve"), py::arg("m"));
    m.def("hausdorff_distance", &hausdorff_distance);
    m.def("isoperimetric_ratio", &isoperimetric_ratio);

    m.def("classify", [](const DiscreteCurve& c, double tol) { return to_json(classify(c, tol)).dump(); },
          py::arg("curve"), py::arg("tol") = kDefaultClassifyTolerance);
    m.def("time_bounds", [](double l0) { return to_json(time_bounds(l0)).dump(); }, py::arg("L0"));

    m.def("evolve", [](const DiscreteCurve& c, const std::string& flow) {
        const FlowSpec spec = flow_spec_from_json(parse(flow));
        validate(spec, c);
        Trajectory traj;
        {
            py::gil_scoped_release release;
            traj = evolve(c, spec);
        }
        py::dict d;
        d["times"] = to_array(traj.times);
        py::list snaps, samples;
        for (const auto& s : traj.snapshots) snaps.append(py::cast(s));
        for (const auto& s : traj.monitors.samples) samples.append(sample_dict(s));
        d["snapshots"] = snaps;
        d["monitors"] = samples;
        d["termination"] = std::string(to_string(traj.termination));
        d["steps"] = traj.steps;
        if (traj.times.size() >= 3) {
            const auto fit = fit_scale_profile(traj);
            d["fitted_K"] = fit.K;
        }
        return d;
    }, py::arg("curve"), py::arg("flow"));

    m.def("read_curve_csv", [](const std::string& path) { return read_curve_csv(std::filesystem::path(path)); });
    m.def("write_curve_csv", [](const std::string& path, const DiscreteCurve& c) {
        write_curve_csv(std::filesystem::path(path), c);
    });
}
