//! Python bindings: groups, words, tree groups and the main invariant operations.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use whitney_core::calculus::{
    self, ClaspMove, ConcordancePart, EssentialKnotClass, IntFamily, LinkClass, SphereSpec, StabilizerVerdict,
};
use whitney_core::span::{span_member_windowed, WindowVerdict, DEFAULT_DIM_CAP};
use whitney_core::syntax::{self, ParseContext, Value};
use whitney_core::{Coset, RingElem, T1Mode, Tree0Elem, Tree1Elem, TreeModule};

fn err(e: whitney_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Group", frozen)]
struct PyGroup(whitney_core::Group);

#[pyclass(name = "Word", frozen)]
struct PyWord(whitney_core::Word);

#[pyclass(name = "Ring", frozen)]
struct PyRing(RingElem);

#[pyclass(name = "Tree0", frozen)]
struct PyTree0(Tree0Elem);

#[pyclass(name = "Tree1", frozen)]
struct PyTree1(Tree1Elem);

#[pyclass(name = "Sphere", frozen)]
struct PySphere(SphereSpec);

fn words(ws: Vec<PyRef<'_, PyWord>>) -> Vec<whitney_core::Word> {
    ws.iter().map(|w| w.0.clone()).collect()
}

#[pymethods]
impl PyGroup {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        syntax::parse_group(spec).map(PyGroup).map_err(err)
    }

    fn generators(&self) -> Vec<String> {
        self.0.generator_names().to_vec()
    }

    fn identity(&self) -> PyWord {
        PyWord(self.0.identity())
    }

    fn word(&self, text: &str) -> PyResult<PyWord> {
        syntax::parse_word(&self.0, text).map(PyWord).map_err(err)
    }

    fn ring(&self, text: &str) -> PyResult<PyRing> {
        syntax::parse_ring(&self.0, text).map(PyRing).map_err(err)
    }

    #[pyo3(signature = (text, labels = 1))]
    fn tree0(&self, text: &str, labels: usize) -> PyResult<PyTree0> {
        syntax::parse_tree0(&ParseContext::new(&self.0).with_labels(labels), text).map(PyTree0).map_err(err)
    }

    /// An order-1 tree; with `coset`, decorations live in `<coset> \ G`.
    #[pyo3(signature = (text, labels = 1, coset = None))]
    fn tree1(&self, text: &str, labels: usize, coset: Option<PyRef<'_, PyWord>>) -> PyResult<PyTree1> {
        let mut ctx = ParseContext::new(&self.0).with_labels(labels);
        if let Some(g) = coset {
            ctx = ctx.with_t1_mode(T1Mode::LeftCoset(Coset::new(g.0.clone()).map_err(err)?));
        }
        syntax::parse_tree1(&ctx, text).map(PyTree1).map_err(err)
    }

    /// Parse any expression; returns a Word, Ring, Tree0 or Tree1.
    #[pyo3(signature = (text, labels = 1))]
    fn parse(&self, py: Python<'_>, text: &str, labels: usize) -> PyResult<Py<PyAny>> {
        let v = syntax::parse_expression(&ParseContext::new(&self.0).with_labels(labels), text).map_err(err)?;
        Ok(match v {
            Value::Word(w) => Py::new(py, PyWord(w))?.into_any(),
            Value::Ring(r) => Py::new(py, PyRing(r))?.into_any(),
            Value::Tree0(t) => Py::new(py, PyTree0(t))?.into_any(),
            Value::Tree1(t) => Py::new(py, PyTree1(t))?.into_any(),
        })
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Group('{}')", self.0)
    }
}

#[pymethods]
impl PyWord {
    fn inverse(&self) -> PyWord {
        PyWord(self.0.inv())
    }

    fn __pow__(&self, n: i64, _modulo: Option<i64>) -> PyWord {
        PyWord(self.0.pow(n))
    }

    fn __mul__(&self, other: PyRef<'_, PyWord>) -> PyResult<PyWord> {
        whitney_core::group::multiply(&self.0, &other.0).map(PyWord).map_err(err)
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn __eq__(&self, other: PyRef<'_, PyWord>) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}')", self.0)
    }
}

#[pymethods]
impl PyRing {
    fn __add__(&self, other: PyRef<'_, PyRing>) -> PyResult<PyRing> {
        self.0.try_add(&other.0).map(PyRing).map_err(err)
    }

    fn __mul__(&self, other: PyRef<'_, PyRing>) -> PyResult<PyRing> {
        self.0.try_mul(&other.0).map(PyRing).map_err(err)
    }

    fn bar(&self) -> PyRing {
        PyRing(self.0.bar())
    }

    fn augmentation(&self) -> i64 {
        self.0.augmentation()
    }

    fn __eq__(&self, other: PyRef<'_, PyRing>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ring('{}')", self.0)
    }
}

macro_rules! tree_methods {
    ($t:ident, $name:literal) => {
        #[pymethods]
        impl $t {
            fn __add__(&self, other: PyRef<'_, $t>) -> PyResult<$t> {
                self.0.try_add(&other.0).map($t).map_err(err)
            }

            fn __sub__(&self, other: PyRef<'_, $t>) -> PyResult<$t> {
                self.0.try_add(&other.0.negated()).map($t).map_err(err)
            }

            fn __neg__(&self) -> $t {
                $t(self.0.negated())
            }

            fn __mul__(&self, c: i64) -> $t {
                $t(self.0.scale(c))
            }

            fn __rmul__(&self, c: i64) -> $t {
                $t(self.0.scale(c))
            }

            /// The whisker-change action by one word per component.
            fn psi(&self, psi: Vec<PyRef<'_, PyWord>>) -> PyResult<$t> {
                self.0.psi_action(&words(psi)).map($t).map_err(err)
            }

            fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            fn __eq__(&self, other: PyRef<'_, $t>) -> bool {
                self.0 == other.0
            }

            fn __str__(&self) -> String {
                self.0.to_string()
            }

            fn __repr__(&self) -> String {
                format!("{}('{}')", $name, self.0)
            }
        }
    };
}

tree_methods!(PyTree0, "Tree0");
tree_methods!(PyTree1, "Tree1");

#[pymethods]
impl PySphere {
    /// Separating sphere with the named factors on the M' side.
    #[staticmethod]
    fn separating(group: PyRef<'_, PyGroup>, mprime: Vec<String>) -> PyResult<PySphere> {
        let idx = mprime.iter().map(|k| group.0.resolve_factor(k)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        SphereSpec::separating(&group.0, &idx).map(PySphere).map_err(err)
    }

    /// Nonseparating sphere dual to the circle of an S^1 x S^2 factor.
    #[staticmethod]
    fn nonseparating(group: PyRef<'_, PyGroup>, factor: &str) -> PyResult<PySphere> {
        let i = group.0.resolve_factor(factor).map_err(err)?;
        SphereSpec::nonseparating(&group.0, i).map(PySphere).map_err(err)
    }

    fn with_whisker(&self, a: PyRef<'_, PyWord>) -> PySphere {
        PySphere(self.0.clone().with_whisker(a.0.clone()))
    }

    fn __repr__(&self) -> String {
        format!("Sphere(whisker='{}')", self.0.whisker())
    }
}

// A link value: a ring element for a knot or an order-0 tree.
fn link(z: &Bound<'_, PyAny>) -> PyResult<LinkClass> {
    if let Ok(r) = z.cast::<PyRing>() {
        return LinkClass::knot(&r.get().0).map_err(err);
    }
    if let Ok(t) = z.cast::<PyTree0>() {
        return LinkClass::new(t.get().0.clone()).map_err(err);
    }
    Err(PyTypeError::new_err("expected a Ring (knot) or Tree0 (link)"))
}

/// sigma_S(g): the factored form as text and the expanded ring element.
#[pyfunction]
fn sigma(sphere: PyRef<'_, PySphere>, g: PyRef<'_, PyWord>) -> PyResult<(String, PyRing)> {
    let s = calculus::sigma_of(&sphere.0, &g.0).map_err(err)?;
    Ok((s.to_string(), PyRing(s.expand())))
}

#[pyfunction]
fn pairing(z: &Bound<'_, PyAny>, sphere: PyRef<'_, PySphere>) -> PyResult<PyTree1> {
    calculus::pairing_tau1_link_sphere(&link(z)?, &sphere.0).map(PyTree1).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (z, g, i = 1, j = 1, labels = 1))]
fn int_null(z: &Bound<'_, PyAny>, g: PyRef<'_, PyWord>, i: usize, j: usize, labels: usize) -> PyResult<PyTree1> {
    calculus::int_relations_null(&link(z)?, &g.0, i, j, labels).map(PyTree1).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (gamma, z, beta, r = 1))]
fn int_essential(gamma: PyRef<'_, PyWord>, z: PyRef<'_, PyRing>, beta: PyRef<'_, PyWord>, r: i64) -> PyResult<PyTree1> {
    let k = EssentialKnotClass::from_ring(gamma.0.clone(), &z.0).map_err(err)?;
    calculus::int_relations_essential(&k, &beta.0, r).map(PyTree1).map_err(err)
}

/// Returns `("not_stabilizer" | "untwisted" | "twisted", orbits)`.
#[pyfunction]
fn stabilizer(z: &Bound<'_, PyAny>, psi: Vec<PyRef<'_, PyWord>>) -> PyResult<(String, Vec<Vec<String>>)> {
    Ok(match calculus::stabilizer_classify(&link(z)?, &words(psi)).map_err(err)? {
        StabilizerVerdict::NotStabilizer => ("not_stabilizer".into(), vec![]),
        StabilizerVerdict::Untwisted => ("untwisted".into(), vec![]),
        StabilizerVerdict::Twisted(os) => (
            "twisted".into(),
            os.into_iter().map(|o| o.elements.iter().map(|w| w.to_string()).collect()).collect(),
        ),
    })
}

/// Composes forward parts `(tau, latitude)`; returns the sum and the product latitude.
#[pyfunction]
fn compose(parts: Vec<(PyRef<'_, PyTree1>, Vec<PyRef<'_, PyWord>>)>) -> PyResult<(PyTree1, Vec<PyWord>)> {
    let parts = parts
        .into_iter()
        .map(|(t, l)| ConcordancePart::Forward { tau: t.0.clone(), latitude: words(l) })
        .collect();
    let (t, l) = calculus::compose_invariants(parts).map_err(err)?;
    Ok((PyTree1(t), l.into_iter().map(PyWord).collect()))
}

#[pyfunction]
#[pyo3(signature = (g, n = 1, i = 1, j = 1, labels = 1))]
fn clasp_twist(g: PyRef<'_, PyWord>, n: i64, i: usize, j: usize, labels: usize) -> PyResult<PyTree1> {
    let mv = ClaspMove::Twist { n, g: g.0.clone(), i, j };
    calculus::clasp_move_delta(g.0.group(), labels, &mv).map(PyTree1).map_err(err)
}

/// Windowed membership of `target` in the span of INT(z).
#[pyfunction]
#[pyo3(signature = (target, z, rmax = 16, directions = None, labels = 1))]
fn member<'py>(
    py: Python<'py>,
    target: PyRef<'_, PyTree1>,
    z: &Bound<'py, PyAny>,
    rmax: usize,
    directions: Option<Vec<PyRef<'_, PyWord>>>,
    labels: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let mut fam = IntFamily::new(link(z)?, labels);
    if let Some(d) = directions {
        fam = fam.with_directions(words(d));
    }
    let v = span_member_windowed(&target.0, &fam, rmax, DEFAULT_DIM_CAP).map_err(err)?;
    let out = PyDict::new(py);
    match v {
        WindowVerdict::Witness { radius, coefficients } => {
            out.set_item("verdict", "witness")?;
            out.set_item("radius", radius)?;
            out.set_item("coefficients", coefficients)?;
        }
        WindowVerdict::NoWitnessUpTo(r) => {
            out.set_item("verdict", "no_witness")?;
            out.set_item("rmax", r)?;
        }
    }
    Ok(out)
}

#[pymodule]
fn whitney(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyTree0>()?;
    m.add_class::<PyTree1>()?;
    m.add_class::<PySphere>()?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(int_null, m)?)?;
    m.add_function(wrap_pyfunction!(int_essential, m)?)?;
    m.add_function(wrap_pyfunction!(stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(clasp_twist, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    Ok(())
}
