//! Python bindings for the parind engine.
//!
//! Exponents cross the boundary as strings (`"3/2"`) or ints, verdicts as
//! strings, and multiplicity tables as plain dicts.

use std::sync::Arc;

use parind_core::cli::{self, Expression};
use parind_core::jordan::{
    extended_support_induced, jacquet_feasible, jord_update_from_segment, rp_contains,
};
use parind_core::linkage::decide_irreducible;
use parind_core::packets::is_generic;
use parind_core::rational::{format_rational, parse_rational};
use parind_core::segcalc::linked;
use parind_core::{
    multiplicity_table, Block, DemoOracle, Error, GpPair, JordUpdate, Multiset, Triple, Q,
};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(parind, ParindError, PyValueError);
create_exception!(parind, ParseError, ParindError);

fn err(e: Error) -> PyErr {
    match e {
        Error::Syntax { .. } => ParseError::new_err(e.to_string()),
        _ => ParindError::new_err(e.to_string()),
    }
}

fn exponent(x: &Bound<'_, PyAny>) -> PyResult<Q> {
    if let Ok(n) = x.extract::<i64>() {
        return Ok(Q::from_integer(n));
    }
    let s: String = x.extract()?;
    parse_rational(&s).map_err(err)
}

/// A set of cuspidal symbols.
#[pyclass(frozen, module = "parind")]
struct Universe {
    inner: Arc<parind_core::Universe>,
}

#[pymethods]
impl Universe {
    /// The built-in universe r1, r2, r3/r3v, r4, r5.
    #[staticmethod]
    fn default() -> Self {
        Universe {
            inner: Arc::new(cli::default_universe()),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let u = parind_core::Universe::from_json_str(text).map_err(err)?;
        Ok(Universe { inner: Arc::new(u) })
    }

    fn symbols(&self) -> Vec<String> {
        self.inner
            .ids()
            .map(|id| self.inner.name(id).to_string())
            .collect()
    }

    fn dim(&self, name: &str) -> PyResult<u32> {
        let id = self.inner.lookup(name).map_err(err)?;
        Ok(self.inner.dim(id))
    }

    fn is_self_dual(&self, name: &str) -> PyResult<bool> {
        let id = self.inner.lookup(name).map_err(err)?;
        Ok(self.inner.is_self_dual(id))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Universe({})", self.symbols().join(", "))
    }
}

fn universe_or_default(u: Option<&Universe>) -> Arc<parind_core::Universe> {
    match u {
        Some(u) => u.inner.clone(),
        None => Arc::new(cli::default_universe()),
    }
}

fn parse_expr(u: &parind_core::Universe, text: &str) -> PyResult<Expression> {
    cli::parse(text, u).map_err(err)
}

fn tempered(
    u: &parind_core::Universe,
    e: &Expression,
    group: Option<&str>,
) -> PyResult<parind_core::JordanSet> {
    let blocks: &Multiset<Block> = e
        .tempered
        .as_ref()
        .ok_or_else(|| ParindError::new_err("the expression needs a tempered factor pi{...}"))?;
    let g = match group {
        Some(g) => cli::parse_group(g).map_err(err)?,
        None => cli::infer_group(u, blocks, true).map_err(err)?,
    };
    parind_core::JordanSet::new(u, g, blocks.clone()).map_err(err)
}

/// A tempered representation given by its Jordan blocks.
#[pyclass(frozen, module = "parind")]
struct JordanSet {
    universe: Arc<parind_core::Universe>,
    inner: parind_core::JordanSet,
}

#[pymethods]
impl JordanSet {
    /// Parses `pi{(r1,2),...}`; the group is inferred unless given as
    /// `"so:5"` or `"sp:4"`.
    #[new]
    #[pyo3(signature = (text, group=None, universe=None))]
    fn new(text: &str, group: Option<&str>, universe: Option<&Universe>) -> PyResult<Self> {
        let u = universe_or_default(universe);
        let e = parse_expr(&u, text)?;
        if !e.factors.is_empty() {
            return Err(ParindError::new_err(
                "expected a tempered expression pi{...}",
            ));
        }
        let inner = tempered(&u, &e, group)?;
        Ok(JordanSet { universe: u, inner })
    }

    #[getter]
    fn group(&self) -> String {
        self.inner.group().to_string()
    }

    fn blocks(&self) -> Vec<(String, u32)> {
        self.inner
            .blocks()
            .iter()
            .map(|b| (self.universe.name(b.rho).to_string(), b.a))
            .collect()
    }

    fn rp(&self, symbol: &str, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        let rho = self.universe.lookup(symbol).map_err(err)?;
        Ok(rp_contains(&self.universe, rho, exponent(x)?, &self.inner))
    }

    /// Jordan set after inducing from a single segment, or None when the
    /// segment is incompatible.
    fn jord_update(&self, segment: &str) -> PyResult<Option<JordanSet>> {
        let e = parse_expr(&self.universe, segment)?;
        let seg = match (e.factors.as_slice(), &e.tempered) {
            ([f], None) => f.segment(),
            _ => return Err(ParindError::new_err("expected a single segment")),
        };
        Ok(
            match jord_update_from_segment(&self.universe, &seg, &self.inner).map_err(err)? {
                JordUpdate::Updated(k) => Some(JordanSet {
                    universe: self.universe.clone(),
                    inner: k,
                }),
                JordUpdate::Incompatible => None,
            },
        )
    }

    /// Feasibility of a Jacquet sequence written `r1^3/2,r1^1/2`.
    fn jacquet(&self, points: &str) -> PyResult<bool> {
        let pts = cli::parse_points(points, &self.universe).map_err(err)?;
        Ok(jacquet_feasible(&self.universe, &pts, &self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "JordanSet({} over {})",
            cli::format_blocks(&self.universe, self.inner.blocks()),
            self.inner.group()
        )
    }
}

/// Canonical form of an expression.
#[pyfunction]
#[pyo3(signature = (text, universe=None))]
fn canonical(text: &str, universe: Option<&Universe>) -> PyResult<String> {
    let u = universe_or_default(universe);
    Ok(cli::format(&parse_expr(&u, text)?, &u))
}

/// Zelevinsky linkage of two segments.
#[pyfunction]
#[pyo3(signature = (s1, s2, universe=None))]
fn linked_segments(s1: &str, s2: &str, universe: Option<&Universe>) -> PyResult<bool> {
    let u = universe_or_default(universe);
    let one = |t: &str| -> PyResult<parind_core::Segment> {
        match parse_expr(&u, t)?.factors.as_slice() {
            [f] => Ok(f.segment()),
            _ => Err(ParindError::new_err(format!(
                "`{t}` is not a single segment"
            ))),
        }
    };
    linked(&one(s1)?, &one(s2)?).map_err(err)
}

/// Irreducibility verdict: "Irreducible", "Reducible" or "Unknown".
#[pyfunction]
#[pyo3(signature = (text, generic=false, group=None, universe=None))]
fn irreducible(
    text: &str,
    generic: bool,
    group: Option<&str>,
    universe: Option<&Universe>,
) -> PyResult<String> {
    let u = universe_or_default(universe);
    let e = parse_expr(&u, text)?;
    let j = tempered(&u, &e, group)?;
    let ts = e
        .segments()
        .into_iter()
        .map(Triple::from_segment)
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    Ok(decide_irreducible(&u, &ts, &j, generic)
        .map_err(err)?
        .to_string())
}

/// Extended cuspidal support as `(symbol, exponent)` pairs.
#[pyfunction]
#[pyo3(signature = (text, group=None, universe=None))]
fn extended_support(
    text: &str,
    group: Option<&str>,
    universe: Option<&Universe>,
) -> PyResult<Vec<(String, String)>> {
    let u = universe_or_default(universe);
    let e = parse_expr(&u, text)?;
    let j = tempered(&u, &e, group)?;
    let mut out: Vec<(String, String)> = extended_support_induced(&u, &e.segments(), &j)
        .points
        .iter()
        .map(|p| (u.name(p.rho).to_string(), format_rational(&p.x)))
        .collect();
    out.sort();
    Ok(out)
}

/// Genericity of the parameter written as GL factors with positive
/// exponents followed by `pi{...}`.
#[pyfunction]
#[pyo3(signature = (text, universe=None))]
fn generic(text: &str, universe: Option<&Universe>) -> PyResult<bool> {
    let u = universe_or_default(universe);
    let p = cli::parameter_from_expression(&u, &parse_expr(&u, text)?, None, true).map_err(err)?;
    Ok(is_generic(&u, &p))
}

/// Multiplicity table for a pair of parameters, computed with the demo
/// oracle. Returns the same dict as the JSON output of `parind gp`.
#[pyfunction]
#[pyo3(signature = (p, p_prime, universe=None))]
fn gp_table_demo(
    py: Python<'_>,
    p: &str,
    p_prime: &str,
    universe: Option<&Universe>,
) -> PyResult<Py<PyAny>> {
    let u = universe_or_default(universe);
    let p = cli::parameter_from_expression(&u, &parse_expr(&u, p)?, None, true).map_err(err)?;
    let p2 =
        cli::parameter_from_expression(&u, &parse_expr(&u, p_prime)?, None, true).map_err(err)?;
    let pair = GpPair::new(p.group().clone(), p2.group().clone(), None).map_err(err)?;
    let t = multiplicity_table(&u, &p, &p2, &pair, &DemoOracle).map_err(err)?;
    let text = t.to_json(&u).to_string();
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Runs the command line tool in-process; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("parind".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn parind(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ParindError", m.py().get_type::<ParindError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add_class::<Universe>()?;
    m.add_class::<JordanSet>()?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    m.add_function(wrap_pyfunction!(linked_segments, m)?)?;
    m.add_function(wrap_pyfunction!(irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(extended_support, m)?)?;
    m.add_function(wrap_pyfunction!(generic, m)?)?;
    m.add_function(wrap_pyfunction!(gp_table_demo, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
