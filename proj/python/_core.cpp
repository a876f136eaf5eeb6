#include "dgc/cyclic.hpp"
#include "dgc/task.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dgc;

namespace {

py::tuple outcome(const RunOutcome& o)
{
    return py::make_tuple(dump_report(o.report), o.invariants_ok, o.resolved);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    py::register_exception<TaskError>(m, "TaskError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    m.def(
        "run_task_file",
        [](const std::string& path, const std::string& backend) {
            TaskSpec t = load_task(path);
            py::gil_scoped_release nogil;
            RunOutcome o = run_task(t, backend);
            py::gil_scoped_acquire gil;
            return outcome(o);
        },
        py::arg("path"), py::arg("backend") = "");
    m.def(
        "run_task_text",
        [](const std::string& text, const std::string& backend) {
            TaskSpec t = parse_task(text);
            py::gil_scoped_release nogil;
            RunOutcome o = run_task(t, backend);
            py::gil_scoped_acquire gil;
            return outcome(o);
        },
        py::arg("text"), py::arg("backend") = "");
    m.def("hh_graded_dims",
          [](const std::vector<std::string>& names, const std::vector<std::string>& relations, int d,
             int nmax) { return hh_graded_dims(PresentedAlgebra::parse(names, relations), d, nmax); });
    m.def("form_graded_dims",
          [](const std::vector<std::string>& names, const std::vector<std::string>& relations, int d) {
              return form_graded_dims(PresentedAlgebra::parse(names, relations), d);
          });
}
