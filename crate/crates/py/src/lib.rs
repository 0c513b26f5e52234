//! Python bindings: truth tables, DNF formulas, the exact quantities,
//! strategy measurement, sampling, and criticality estimation.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use avgdepth::criticality as crit;
use avgdepth::dnf;
use avgdepth::exact;
use avgdepth::families;
use avgdepth::rational::Frac;
use avgdepth::rng::SplitMix64;
use avgdepth::sampling;
use avgdepth::strategy::{self, DecisionStrategy, MeasureMode};
use avgdepth::{PathSpec, Restriction};

fn err(e: avgdepth::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A boolean function as a complete table. Input (x_1, ..., x_n) maps to
/// index sum x_i 2^(i-1).
#[pyclass(frozen, skip_from_py_object, name = "TruthTable")]
#[derive(Clone)]
struct PyTruthTable {
    inner: avgdepth::TruthTable,
}

#[pymethods]
impl PyTruthTable {
    /// Parse the two-line text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: avgdepth::TruthTable::parse_text(text).map_err(err)?,
        })
    }

    /// and | or | xor on n variables.
    #[staticmethod]
    fn named(kind: &str, n: u32) -> PyResult<Self> {
        let kind = match kind {
            "and" => families::NamedKind::And,
            "or" => families::NamedKind::Or,
            "xor" => families::NamedKind::Xor,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown kind {other:?} (and, or, xor)"
                )))
            }
        };
        Ok(PyTruthTable {
            inner: families::make_named(kind, n).map_err(err)?,
        })
    }

    /// Unique black point z on n variables.
    #[staticmethod]
    fn point(n: u32, z: u32) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: families::make_named(families::NamedKind::Point(z), n).map_err(err)?,
        })
    }

    /// Constant function.
    #[staticmethod]
    fn constant(n: u32, value: bool) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: families::make_named(families::NamedKind::Constant(value), n).map_err(err)?,
        })
    }

    /// Penalty shoot-out on 2*rounds+1 variables.
    #[staticmethod]
    fn pso(rounds: u32) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: families::pso(rounds).map_err(err)?,
        })
    }

    /// Uniform sample of an n-variable function with weight exactly m.
    #[staticmethod]
    fn sample(n: u32, m: u64, seed: u64) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: sampling::sample_fixed_weight(n, m, seed).map_err(err)?,
        })
    }

    /// Build from the list of table indices mapped to 1.
    #[staticmethod]
    fn from_on_set(n: u32, on: Vec<u32>) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: avgdepth::TruthTable::from_on_set(n, &on).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    fn weight(&self) -> u64 {
        self.inner.weight()
    }

    fn value(&self, index: u32) -> PyResult<bool> {
        if index as usize >= self.inner.size() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.get(index))
    }

    fn on_set(&self) -> Vec<u32> {
        self.inner.on_set()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Subfunction after fixing the given (variable, value) pairs.
    fn restrict(&self, pairs: Vec<(u32, bool)>) -> PyResult<Self> {
        let rho = Restriction::from_pairs(&pairs).map_err(err)?;
        Ok(PyTruthTable {
            inner: self.inner.restrict(&rho).map_err(err)?,
        })
    }

    /// Block composition: self(g(x^(1)), ..., g(x^(n))).
    fn compose(&self, g: &PyTruthTable) -> PyResult<Self> {
        Ok(PyTruthTable {
            inner: families::compose(&self.inner, &g.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "TruthTable(n={}, weight={})",
            self.inner.n(),
            self.inner.weight()
        )
    }
}

/// A DNF formula.
#[pyclass(frozen, skip_from_py_object, name = "Dnf")]
#[derive(Clone)]
struct PyDnf {
    inner: dnf::DnfFormula,
}

#[pymethods]
impl PyDnf {
    /// Parse the file form: first line n=<int>, then the formula.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDnf {
            inner: dnf::DnfFormula::parse_file(text).map_err(err)?,
        })
    }

    /// One width-n term per black point of f.
    #[staticmethod]
    fn canonical(f: &PyTruthTable) -> PyResult<Self> {
        Ok(PyDnf {
            inner: dnf::DnfFormula::canonical(&f.inner).map_err(err)?,
        })
    }

    /// Random formula with `size` terms of `width` distinct literals.
    #[staticmethod]
    fn random(n: u32, size: usize, width: u32, seed: u64) -> PyResult<Self> {
        let mut rng = SplitMix64::new(seed);
        Ok(PyDnf {
            inner: dnf::DnfFormula::random(n, size, width, &mut rng).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    fn width(&self) -> u32 {
        self.inner.width()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn eval(&self, index: u32) -> bool {
        self.inner.eval(index)
    }

    fn to_table(&self) -> PyResult<PyTruthTable> {
        Ok(PyTruthTable {
            inner: self.inner.to_table().map_err(err)?,
        })
    }

    fn print(&self) -> String {
        self.inner.print_file()
    }

    fn __repr__(&self) -> String {
        format!(
            "Dnf(n={}, size={}, width={})",
            self.inner.n(),
            self.inner.size(),
            self.inner.width()
        )
    }
}

/// Exact average-case depth as an exact fraction (numerator, 2^n).
#[pyfunction]
fn dave_exact(f: &PyTruthTable) -> PyResult<(u128, u128)> {
    let d = exact::dave_exact(&f.inner).map_err(err)?;
    Ok((d.numerator(), 1u128 << d.pow2()))
}

#[pyfunction]
fn worst_depth(f: &PyTruthTable) -> PyResult<u32> {
    exact::worst_depth(&f.inner).map_err(err)
}

#[pyfunction]
fn dtsize_min(f: &PyTruthTable) -> PyResult<u64> {
    exact::dtsize_min(&f.inner).map_err(err)
}

#[pyfunction]
fn min_certificate(f: &PyTruthTable) -> PyResult<u32> {
    avgdepth::certificate::min_certificate(&f.inner).map_err(err)
}

#[pyfunction]
fn certificate_complexity(f: &PyTruthTable, x: u32) -> PyResult<u32> {
    if x as usize >= f.inner.size() {
        return Err(PyValueError::new_err("input index out of range"));
    }
    Ok(avgdepth::certificate::certificate_complexity(&f.inner, x))
}

/// Maximal equivalent coordinate sets as (members, is_pure) pairs.
#[pyfunction]
fn ecs_classes(f: &PyTruthTable) -> PyResult<Vec<(Vec<u32>, bool)>> {
    let part = avgdepth::ecs::ecs_partition(&f.inner).map_err(err)?;
    Ok(part
        .classes()
        .iter()
        .map(|c| (c.members.clone(), c.pure))
        .collect())
}

fn build_strategy(
    f: &avgdepth::TruthTable,
    name: &str,
    seed: u64,
) -> PyResult<Box<dyn DecisionStrategy>> {
    Ok(match name {
        "naive" => Box::new(strategy::naive_strategy(f)),
        "ecs" => Box::new(strategy::ecs_strategy(f).map_err(err)?),
        "partition" => Box::new(strategy::partition_strategy(f).map_err(err)?),
        "recursive" => Box::new(strategy::recursive_strategy(f).map_err(err)?),
        other => match other.strip_prefix("restriction:") {
            Some(p) => {
                let p = avgdepth::rational::parse_frac(p).map_err(err)?;
                Box::new(strategy::restriction_strategy(f, p, seed).map_err(err)?)
            }
            None => {
                return Err(PyValueError::new_err(format!(
                    "unknown strategy {name:?} (naive, ecs, partition, recursive, restriction:P)"
                )))
            }
        },
    })
}

/// Measure a strategy's expected cost. trials=0 walks the full transcript
/// tree (exact); otherwise a seeded Monte Carlo estimate. Returns
/// (mean, max_cost).
#[pyfunction]
#[pyo3(signature = (f, name, trials = 0, seed = 0))]
fn strategy_cost(f: &PyTruthTable, name: &str, trials: u64, seed: u64) -> PyResult<(f64, u32)> {
    let s = build_strategy(&f.inner, name, seed)?;
    let mode = if trials == 0 {
        MeasureMode::Exact
    } else {
        MeasureMode::MonteCarlo { trials, seed }
    };
    let report = strategy::measure_cost(s.as_ref(), &f.inner, mode).map_err(err)?;
    Ok((report.estimate.mean(), report.max_cost))
}

/// Weight trajectory of the box process along a query path.
#[pyfunction]
fn box_process(n: u32, m: u64, path: Vec<(u32, bool)>, seed: u64) -> PyResult<Vec<u64>> {
    let path = PathSpec::new(path).map_err(err)?;
    Ok(sampling::box_process(n, m, &path, seed).map_err(err)?.counts)
}

/// Is every length-<=t path a delta-parity path? delta = num/den.
#[pyfunction]
fn is_t_delta_parity(f: &PyTruthTable, t: u32, num: u64, den: u64) -> PyResult<bool> {
    if den == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    sampling::is_t_delta_parity(&f.inner, t, Frac::new(num, den)).map_err(err)
}

/// Criticality estimate over the default p grid (1/2 .. 1/2^10).
#[pyfunction]
fn lambda_estimate(f: &PyTruthTable) -> PyResult<f64> {
    Ok(crit::lambda_estimate(&f.inner, &crit::default_p_grid())
        .map_err(err)?
        .lambda)
}

/// Tail probabilities Pr[D(f|rho) >= t] under the p-random restriction,
/// p = num/den, as floats for t = 0..=n.
#[pyfunction]
fn restriction_tail(f: &PyTruthTable, num: u64, den: u64) -> PyResult<Vec<f64>> {
    if den == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    let tail = crit::restriction_tail(&f.inner, Frac::new(num, den)).map_err(err)?;
    Ok((0..=f.inner.n() as usize).map(|t| tail.tail_f64(t)).collect())
}

/// n(1 - 1/lambda) + 2 sqrt(n/lambda).
#[pyfunction]
fn restriction_cost_bound(n: u32, lambda: f64) -> PyResult<f64> {
    crit::restriction_cost_bound(n, lambda).map_err(err)
}

/// Named experiment (lemma36, theorem12, theorem13, criticality, prop41,
/// pso-table) at reduced default sizes; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0))]
fn run_experiment(name: &str, seed: u64) -> PyResult<String> {
    let report = match name {
        "lemma36" => sampling::parity_deviation_experiment(&sampling::ParityDeviationParams {
            n: 60,
            m: 1 << 30,
            eps: 0.5,
            delta: Frac::new(1, 30),
            path_len: 15,
            trials: 10_000,
            seed,
        })
        .map_err(err)?,
        "theorem12" => sampling::min_certificate_experiment(
            &sampling::MinCertificateParams::new(12, 1 << 10, 50, seed),
        )
        .map_err(err)?,
        "theorem13" => {
            avgdepth::experiments::block_dnf_experiment(16, 8, 8, seed).map_err(err)?
        }
        "criticality" => {
            avgdepth::experiments::criticality_consistency_experiment(10, 3, 8, 10, seed)
                .map_err(err)?
        }
        "prop41" => avgdepth::experiments::gate_cost_experiment(50, 12, 8, seed).map_err(err)?,
        "pso-table" => avgdepth::experiments::pso_table_experiment(0, 5).map_err(err)?,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown experiment {other:?}"
            )))
        }
    };
    Ok(report.to_json())
}

#[pymodule]
fn avgdepth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTruthTable>()?;
    m.add_class::<PyDnf>()?;
    m.add_function(wrap_pyfunction!(dave_exact, m)?)?;
    m.add_function(wrap_pyfunction!(worst_depth, m)?)?;
    m.add_function(wrap_pyfunction!(dtsize_min, m)?)?;
    m.add_function(wrap_pyfunction!(min_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(certificate_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(ecs_classes, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_cost, m)?)?;
    m.add_function(wrap_pyfunction!(box_process, m)?)?;
    m.add_function(wrap_pyfunction!(is_t_delta_parity, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_tail, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_cost_bound, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
