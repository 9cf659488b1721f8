//! Executes scenario tasks in order and collects one fact per line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::{Duration, Instant};

use diffalg::classify::{self, GdimEvidence};
use diffalg::derivation::{self, Derivation, MdiMode, WellDefined};
use diffalg::error::Error;
use diffalg::frobenius::{self, DEFAULT_FROBENIUS_MAX};
use diffalg::ideals;
use diffalg::kaehler::{self, DerModule};
use diffalg::linalg::Subspace;
use diffalg::module::{self as md, Backend, Complex, FreeComplex, PresentedModule, RMatrix, DEFAULT_DEGREE_BOUND};
use diffalg::par::Execution;
use diffalg::poly::cmp_leading;
use diffalg::quotient::QuotientRing;
use diffalg::Polynomial;

use crate::scenario::{normalize, Expected, Expectation, Param, Scenario, Task, TaskKind};

/// Command-line overrides; a task's own keys take precedence.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub bound: Option<i64>,
    pub ext_bound: Option<usize>,
    pub frobenius_max: Option<u32>,
    pub exec: Execution,
}

#[derive(Clone, Debug)]
pub struct Fact {
    pub key: String,
    pub value: String,
    /// Typed payload for ideal and span comparisons.
    polys: Option<Vec<Polynomial>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TaskOutcome {
    pub id: String,
    pub kind: TaskKind,
    pub facts: Vec<Fact>,
    pub checked: usize,
    pub failures: Vec<String>,
    pub error: Option<Error>,
    pub elapsed: Duration,
}

impl TaskOutcome {
    pub fn status(&self) -> Status {
        if self.failures.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn fact(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.key == key).map(|f| f.value.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub title: Option<String>,
    pub outcomes: Vec<TaskOutcome>,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status() == Status::Pass)
    }

    pub fn status(&self) -> Status {
        if self.passed() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn task(&self, id: &str) -> Option<&TaskOutcome> {
        self.outcomes.iter().find(|o| o.id == id)
    }

    /// `task.<id>.<key>` lookup.
    pub fn fact(&self, id: &str, key: &str) -> Option<&str> {
        self.task(id)?.fact(key)
    }

    /// Flat `key = value` lines without timings.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let _ = writeln!(out, "task.{}.kind = {}", o.id, o.kind);
            for f in &o.facts {
                let _ = writeln!(out, "task.{}.{} = {}", o.id, f.key, f.value);
            }
            let _ = writeln!(out, "task.{}.checked = {}", o.id, o.checked);
            let _ = writeln!(out, "task.{}.status = {}", o.id, o.status());
        }
        let failed = self.outcomes.iter().filter(|o| o.status() == Status::Fail).count();
        let _ = writeln!(out, "summary.tasks = {}", self.outcomes.len());
        let _ = writeln!(out, "summary.failed = {failed}");
        let _ = writeln!(out, "summary.status = {}", self.status());
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "scenario {}", self.scenario);
        if let Some(t) = &self.title {
            let _ = write!(out, ": {t}");
        }
        out.push('\n');
        for o in &self.outcomes {
            let _ = writeln!(out, "  [{}] task {} ({}) {:.1} ms", o.status(), o.id, o.kind, o.elapsed.as_secs_f64() * 1e3);
            for f in &o.facts {
                let _ = writeln!(out, "      task.{}.{} = {}", o.id, f.key, f.value);
            }
            for why in &o.failures {
                let _ = writeln!(out, "      mismatch: {why}");
            }
        }
        let failed = self.outcomes.iter().filter(|o| o.status() == Status::Fail).count();
        let _ = writeln!(
            out,
            "  {}: {} of {} tasks passed in {:.1} ms",
            self.status(),
            self.outcomes.len() - failed,
            self.outcomes.len(),
            self.elapsed.as_secs_f64() * 1e3
        );
        out
    }
}

/// Stable snake-case names for engine errors, used by `expect_error`.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::InvalidField(_) => "invalid_field",
        Error::MismatchedRings => "mismatched_rings",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::UnitIdeal => "unit_ideal",
        Error::InfiniteStaircase => "infinite_staircase",
        Error::NotArtinian => "not_artinian",
        Error::NotLocal(_) => "not_local",
        Error::Inhomogeneous(_) => "inhomogeneous",
        Error::BoundTooSmall { .. } => "bound_too_small",
        Error::CharacteristicZero => "characteristic_zero",
        Error::ShapeMismatch(_) => "shape_mismatch",
        Error::UnverifiedDerivation(_) => "unverified_derivation",
        Error::NotDifferential(_) => "not_differential",
        Error::InfiniteColength => "infinite_colength",
        Error::NotAComplex(_) => "not_a_complex",
        Error::NotDomain => "not_domain",
        Error::InconclusiveDepth { .. } => "inconclusive_depth",
        Error::Unsupported(_) => "unsupported",
        Error::Internal(_) => "internal",
    }
}

type TaskResult = diffalg::Result<Vec<Fact>>;

fn fact(key: &str, value: impl Into<String>) -> Fact {
    Fact { key: key.to_string(), value: value.into(), polys: None }
}

fn int_fact(key: &str, n: usize) -> Fact {
    fact(key, n.to_string())
}

fn bool_fact(key: &str, b: bool) -> Fact {
    fact(key, b.to_string())
}

fn dim_fact(key: &str, d: Option<usize>) -> Fact {
    fact(key, d.map_or_else(|| "infinite".to_string(), |d| d.to_string()))
}

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

fn text_fact(key: &str, s: &str) -> Fact {
    fact(key, quoted(s))
}

fn ints_fact(key: &str, v: &[usize]) -> Fact {
    text_fact(key, &v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Sorted by leading monomial, largest first; `"0"` for the empty list.
fn canonical(ring: &QuotientRing, polys: &[Polynomial]) -> Vec<Polynomial> {
    let ord = &ring.ambient().order;
    let mut v: Vec<Polynomial> = polys.iter().map(|p| ring.nf(p)).filter(|p| !p.is_zero()).collect();
    v.sort_by(|a, b| cmp_leading(b, a, ord).then_with(|| b.to_string().cmp(&a.to_string())));
    v
}

fn poly_list(polys: &[Polynomial]) -> String {
    if polys.is_empty() {
        return quoted("0");
    }
    polys.iter().map(|p| quoted(&p.to_string())).collect::<Vec<_>>().join(", ")
}

fn polys_fact(ring: &QuotientRing, key: &str, polys: &[Polynomial]) -> Fact {
    let v = canonical(ring, polys);
    Fact { key: key.to_string(), value: poly_list(&v), polys: Some(v) }
}

/// Vectors keep their component order.
fn vector_fact(ring: &QuotientRing, key: &str, v: &[Polynomial]) -> Fact {
    let v: Vec<Polynomial> = v.iter().map(|p| ring.nf(p)).collect();
    Fact { key: key.to_string(), value: v.iter().map(|p| quoted(&p.to_string())).collect::<Vec<_>>().join(", "), polys: Some(v) }
}

#[derive(Clone, Debug)]
enum Stored {
    Ideal(Vec<Polynomial>),
    Module(PresentedModule),
}

struct Runner<'a> {
    scenario: &'a Scenario,
    opts: Options,
    store: HashMap<String, Stored>,
    der_cache: HashMap<String, DerModule>,
}

fn unknown(msg: String) -> Error {
    Error::Unsupported(msg)
}

impl<'a> Runner<'a> {
    fn ring(&self) -> &'a Arc<QuotientRing> {
        &self.scenario.ring
    }

    fn bound(&self, t: &Task) -> i64 {
        self.int(t, "bound").or(self.opts.bound).unwrap_or(DEFAULT_DEGREE_BOUND)
    }

    fn backend(&self, t: &Task) -> diffalg::Result<Backend> {
        match self.word(t, "backend") {
            None | Some("auto") => Ok(Backend::Auto),
            Some("linear_algebra") => Ok(Backend::LinearAlgebra),
            Some("groebner") => Ok(Backend::Groebner),
            Some(other) => Err(unknown(format!("backend {other}; expected auto, linear_algebra or groebner"))),
        }
    }

    fn int(&self, t: &Task, key: &str) -> Option<i64> {
        match t.param(key) {
            Some(Param::Ints(v)) => v.first().copied(),
            _ => None,
        }
    }

    fn word<'t>(&self, t: &'t Task, key: &str) -> Option<&'t str> {
        match t.param(key) {
            Some(Param::Words(w)) => w.first().map(String::as_str),
            _ => None,
        }
    }

    fn required_int(&self, t: &Task, key: &str) -> diffalg::Result<usize> {
        self.int(t, key).map(|v| v as usize).ok_or_else(|| unknown(format!("task kind {} needs {key}", t.kind)))
    }

    fn polys(&self, t: &Task, key: &str) -> diffalg::Result<Option<Vec<Polynomial>>> {
        match t.param(key) {
            None => Ok(None),
            Some(Param::Polys(p)) => Ok(Some(p.iter().map(|f| self.ring().nf(f)).collect())),
            Some(Param::Ref(name)) => match self.store.get(name) {
                Some(Stored::Ideal(g)) => Ok(Some(g.clone())),
                Some(Stored::Module(_)) => Err(unknown(format!("@{name} is a module, not an ideal"))),
                None => Err(unknown(format!("@{name} has no stored value; its task failed"))),
            },
            Some(_) => Err(Error::Internal(format!("{key} has the wrong parameter type"))),
        }
    }

    fn required_polys(&self, t: &Task, key: &str) -> diffalg::Result<Vec<Polynomial>> {
        self.polys(t, key)?.ok_or_else(|| unknown(format!("task kind {} needs {key}", t.kind)))
    }

    fn derivations(&self, t: &Task, key: &str) -> diffalg::Result<Vec<Derivation>> {
        let Some(Param::Words(names)) = t.param(key) else {
            return Err(unknown(format!("task kind {} needs {key}", t.kind)));
        };
        names
            .iter()
            .map(|n| {
                let d = self.scenario.derivations.iter().find(|d| &d.name == n).expect("validated at parse time");
                match derivation::check_well_defined(self.ring(), d.images.clone())? {
                    WellDefined::Verified(d) => Ok(d),
                    WellDefined::Violated(v) => Err(Error::UnverifiedDerivation(format!("{n}: {v}"))),
                }
            })
            .collect()
    }

    fn der(&mut self, bound: i64, backend: Backend) -> diffalg::Result<DerModule> {
        let key = format!("{bound}:{backend:?}");
        if let Some(d) = self.der_cache.get(&key) {
            return Ok(d.clone());
        }
        let d = kaehler::der_module(self.ring(), bound, backend, self.opts.exec)?;
        self.der_cache.insert(key, d.clone());
        Ok(d)
    }

    fn module_named(&mut self, name: &str, bound: i64, backend: Backend) -> diffalg::Result<PresentedModule> {
        let ring = self.ring();
        match name {
            "R" => Ok(PresentedModule::free_of_rank(ring, 1)),
            "k" => Ok(PresentedModule::residue_field(ring)),
            "omega" => kaehler::omega_presentation(ring),
            "der" => Ok(self.der(bound, backend)?.module),
            "der_coker" => self.der(bound, backend)?.cokernel(),
            _ => {
                let key = name.strip_prefix('@').unwrap_or(name);
                match self.store.get(key) {
                    Some(Stored::Module(m)) => Ok(m.clone()),
                    Some(Stored::Ideal(g)) => md::ideal_module(ring, g, bound, backend),
                    None => Err(unknown(format!("@{key} has no stored value; its task failed"))),
                }
            }
        }
    }

    fn module(&mut self, t: &Task, key: &str, default: Option<&str>) -> diffalg::Result<PresentedModule> {
        let name = self.word(t, key).or(default).ok_or_else(|| unknown(format!("task kind {} needs {key}", t.kind)))?.to_string();
        let (bound, backend) = (self.bound(t), self.backend(t)?);
        self.module_named(&name, bound, backend)
    }

    fn ext_bound(&self, t: &Task) -> usize {
        self.int(t, "ext_bound").map(|v| v as usize).or(self.opts.ext_bound).unwrap_or_else(|| classify::default_ext_bound(self.ring()))
    }

    /// Free complex from displayed differentials; `degrees` grades `F_0`.
    fn displayed_complex(&self, t: &Task) -> diffalg::Result<FreeComplex> {
        let ring = self.ring();
        let Some(Param::Matrices(maps)) = t.param("maps") else {
            return Err(unknown(format!("task kind {} needs maps", t.kind)));
        };
        let first = maps.first().ok_or_else(|| unknown("a complex needs one map".into()))?;
        let d0 = match t.param("degrees") {
            Some(Param::Ints(v)) => v.clone(),
            _ => vec![0; first.nrows()],
        };
        if d0.len() != first.nrows() {
            return Err(Error::ShapeMismatch(format!("{} degrees for a free module of rank {}", d0.len(), first.nrows())));
        }
        let mut degrees = vec![d0];
        for d in maps {
            let prev = degrees.last().expect("nonempty");
            degrees.push(md::degrees_of(ring, prev, d.columns()));
        }
        FreeComplex::new(ring, degrees, maps.clone())
    }

    fn run_task(&mut self, t: &Task) -> TaskResult {
        let ring = self.ring().clone();
        let bound = self.bound(t);
        let backend = self.backend(t)?;
        let mut facts = Vec::new();
        match t.kind {
            TaskKind::WellDefined => {
                let name = self.word(t, "derivation").ok_or_else(|| unknown("well_defined needs derivation".into()))?;
                let d = self.scenario.derivations.iter().find(|d| d.name == name).expect("validated at parse time");
                match derivation::check_well_defined(&ring, d.images.clone())? {
                    WellDefined::Verified(d) => {
                        facts.push(bool_fact("verified", true));
                        facts.push(text_fact("derivation", &d.to_string()));
                    }
                    WellDefined::Violated(v) => {
                        facts.push(bool_fact("verified", false));
                        facts.push(text_fact("violation_generator", &v.generator.to_string()));
                        facts.push(text_fact("violation_value", &v.value.to_string()));
                    }
                }
            }
            TaskKind::ApplyDerivation => {
                let name = self.word(t, "derivation").unwrap_or_default().to_string();
                let mut p = t.clone();
                p.params.insert("derivations".into(), Param::Words(vec![name]));
                let d = self.derivations(&p, "derivations")?.remove(0);
                let xs = self.required_polys(t, "elements")?;
                let values = xs.iter().map(|x| d.apply(x)).collect::<diffalg::Result<Vec<_>>>()?;
                facts.push(vector_fact(&ring, "values", &values));
            }
            TaskKind::DifferentialIdeal => {
                let ds = self.derivations(t, "derivations")?;
                let gens = self.required_polys(t, "ideal")?;
                facts.push(bool_fact("differential", derivation::is_differential_ideal(&ring, &gens, &ds)?));
            }
            TaskKind::MaximalDifferentialIdeal => {
                let ds = self.derivations(t, "derivations")?;
                facts.push(bool_fact("derivations_verified", true));
                let mode = match self.word(t, "mode").unwrap_or("auto") {
                    "auto" => MdiMode::Auto,
                    "shortcut" => MdiMode::Shortcut,
                    "fixpoint" => MdiMode::Fixpoint,
                    "verify" => MdiMode::Verify(self.required_polys(t, "candidate")?),
                    other => return Err(unknown(format!("mode {other}; expected auto, shortcut, fixpoint or verify"))),
                };
                let b = derivation::maximally_differential_ideal(&ring, &ds, mode)?;
                facts.push(polys_fact(&ring, "ideal", &b.generators));
                facts.push(int_fact("mu", ideals::mu(&ring, &b.generators)?));
                facts.push(fact("method", b.method.to_string()));
                facts.push(bool_fact("certified", b.certified));
                facts.push(dim_fact("length", b.quotient_length));
                if !b.fixpoint_dims.is_empty() {
                    facts.push(ints_fact("fixpoint_dims", &b.fixpoint_dims));
                }
                self.save(t, Stored::Ideal(b.generators));
            }
            TaskKind::Socle => {
                let s = classify::socle(&ring)?;
                facts.push(int_fact("dim", s.dim()));
                facts.push(polys_fact(&ring, "basis", &s.basis));
            }
            TaskKind::Gorenstein => {
                let s = classify::socle(&ring)?;
                facts.push(int_fact("socle_dim", s.dim()));
                facts.push(bool_fact("gorenstein", s.dim() == 1));
            }
            TaskKind::EmbeddingDimension => {
                facts.push(int_fact("embdim", classify::embedding_dimension(&ring)?));
                facts.push(int_fact("krull_dimension", ring.krull_dimension()));
                facts.push(bool_fact("embdim_is_dim_plus_one", classify::embdim_is_dim_plus_one(&ring)?));
            }
            TaskKind::KrullDimension => {
                let d = match self.polys(t, "ideal")? {
                    None => ring.krull_dimension(),
                    Some(g) => ideals::quotient_ring(&ring, &g)?.krull_dimension(),
                };
                facts.push(int_fact("dim", d));
            }
            TaskKind::Depth => {
                let m = self.module(t, "module", Some("R"))?;
                let d = classify::depth(&m, bound, backend)?;
                facts.push(int_fact("depth", d.value));
                facts.push(polys_fact(&ring, "sequence", &d.sequence));
                if let Some(w) = &d.witness {
                    facts.push(vector_fact(&ring, "witness", w));
                }
                facts.push(bool_fact("capped", d.capped));
            }
            TaskKind::Length => {
                let g = self.required_polys(t, "ideal")?;
                facts.push(dim_fact("length", ideals::colength(&ring, &g)));
            }
            TaskKind::MinimalGenerators => {
                let min = ideals::minimal_generators(&ring, &self.required_polys(t, "ideal")?)?;
                facts.push(int_fact("mu", min.len()));
                facts.push(polys_fact(&ring, "generators", &min));
                self.save(t, Stored::Ideal(min));
            }
            TaskKind::Annihilator => {
                let ann = ideals::annihilator_of(&ring, &self.required_polys(t, "elements")?)?;
                facts.push(polys_fact(&ring, "ideal", &ann));
                self.save(t, Stored::Ideal(ann));
            }
            TaskKind::CiPresentation => {
                let c = classify::ci_presentation_check(ring.ambient(), ring.generators())?;
                facts.push(fact("class", c.class.to_string()));
                facts.push(int_fact("mu", c.mu));
                facts.push(int_fact("height", c.height));
            }
            TaskKind::CompleteIntersection => {
                let v = classify::is_complete_intersection_ideal(&ring, &self.required_polys(t, "ideal")?, bound, backend)?;
                facts.push(bool_fact("complete_intersection", v.complete_intersection));
                facts.push(text_fact("reason", &v.reason));
            }
            TaskKind::RegularSequence => {
                let seq = self.required_polys(t, "elements")?;
                facts.push(bool_fact("regular", classify::is_regular_sequence(&ring, &seq, bound, backend)?));
            }
            TaskKind::Omega => {
                let om = kaehler::omega_presentation(&ring)?;
                facts.push(int_fact("ngens", om.ngens()));
                facts.push(text_fact("relations", &om.relations().to_string()));
                facts.push(bool_fact("relations_zero", om.relations().is_zero(&ring)));
                facts.push(int_fact("mu", om.mu()?));
                facts.push(dim_fact("dim", om.dim_k()));
                self.save(t, Stored::Module(om));
            }
            TaskKind::Der => {
                let d = self.der(bound, backend)?;
                let coker = d.cokernel()?;
                let in_m = d.embedding.columns().iter().flatten().all(|e| ring.nf(e).constant_term().is_zero());
                let coker_killed = coker.killed_by_maximal_ideal();
                facts.push(dim_fact("dim", d.dim_k()));
                facts.push(int_fact("ngens", d.module.ngens()));
                facts.push(int_fact("mu", d.module.mu()?));
                let gens: Vec<String> = d.derivations()?.iter().map(ToString::to_string).collect();
                facts.push(fact("generators_display", gens.iter().map(|g| quoted(g)).collect::<Vec<_>>().join(", ")));
                facts.push(bool_fact("routes_agree", d.dual_route == d.jacobian_route));
                facts.push(dim_fact("coker_dim", coker.dim_k()));
                facts.push(bool_fact("coker_killed_by_m", coker_killed));
                facts.push(bool_fact("equals_m_free", in_m && coker_killed));
                self.save(t, Stored::Module(d.module));
            }
            TaskKind::Ext => {
                let m = self.module(t, "module", None)?;
                let e = md::ext(&m, self.required_int(t, "i")?, bound, backend)?;
                facts.push(dim_fact("dim", e.dim_k()));
                facts.push(bool_fact("zero", e.is_zero()));
            }
            TaskKind::Tor => {
                let m = self.module(t, "module", None)?;
                let n = self.module(t, "with", Some("k"))?;
                let e = md::tor(&m, &n, self.required_int(t, "i")?, bound, backend)?;
                facts.push(dim_fact("dim", e.dim_k()));
                facts.push(bool_fact("zero", e.is_zero()));
            }
            TaskKind::FreeResolution => {
                let m = self.module(t, "module", None)?;
                let len = self.required_int(t, "length")?;
                let res = md::free_resolution(&m, len, bound, backend)?;
                facts.push(ints_fact("ranks", &res.ranks()));
                facts.push(bool_fact("d_squared_zero", res.check_d_squared().is_ok()));
                let interior = (1..res.len()).map(|i| res.homology(i, bound, backend)).collect::<diffalg::Result<Vec<_>>>()?;
                facts.push(bool_fact("exact", interior.iter().all(PresentedModule::is_zero)));
                facts.push(bool_fact("resolves", presents(&res, &m)));
            }
            TaskKind::Complex => {
                let c = self.displayed_complex(t)?;
                let d2 = c.check_d_squared().is_ok();
                facts.push(bool_fact("d_squared_zero", d2));
                if d2 {
                    let hs = (1..c.len()).map(|i| c.homology(i, bound, backend)).collect::<diffalg::Result<Vec<_>>>()?;
                    let dims: Vec<String> = hs.iter().map(|h| h.dim_k().map_or("infinite".into(), |d| d.to_string())).collect();
                    facts.push(text_fact("homology", &dims.join(", ")));
                    facts.push(bool_fact("exact", hs.iter().all(PresentedModule::is_zero)));
                }
                if t.param("resolves").is_some() {
                    let m = self.module(t, "resolves", None)?;
                    facts.push(bool_fact("resolves", presents(&c, &m)));
                }
            }
            TaskKind::Biduality => {
                let m = self.module(t, "module", None)?;
                let b = md::biduality(&m, bound, backend)?;
                facts.push(bool_fact("iso", b.is_iso()));
                facts.push(bool_fact("injective", b.injective));
                facts.push(bool_fact("surjective", b.surjective));
                facts.push(dim_fact("dim", b.dim));
                facts.push(dim_fact("dual_dim", b.dual_dim));
                facts.push(dim_fact("bidual_dim", b.bidual_dim));
            }
            TaskKind::TotallyReflexive => {
                let m = self.module(t, "module", None)?;
                let tr = classify::totally_reflexive_check(&m, self.ext_bound(t), bound, backend)?;
                facts.push(fact("certificate", tr.to_string()));
                facts.push(bool_fact("pass", tr.pass));
            }
            TaskKind::Gdim => {
                let m = self.module(t, "module", None)?;
                let g = classify::gdim_evidence(&m, self.ext_bound(t), bound, backend)?;
                facts.push(fact("evidence", g.to_string()));
                let (kind, index) = match g {
                    GdimEvidence::Zero(n) => ("zero", n),
                    GdimEvidence::AtMost(d, _) => ("at_most", d),
                    GdimEvidence::Obstructed(i) => ("obstructed", i),
                    GdimEvidence::Undetermined(n) => ("undetermined", n),
                };
                facts.push(fact("class", kind));
                facts.push(int_fact("index", index));
            }
            TaskKind::IsFree => {
                let m = self.module(t, "module", None)?;
                let f = kaehler::is_free(&m)?;
                facts.push(bool_fact("free", f.free));
                facts.push(int_fact("mu", f.mu));
                if let Some(r) = f.rank {
                    facts.push(int_fact("rank", r));
                }
                facts.push(text_fact("certificate", &f.certificate));
            }
            TaskKind::ModuleRank => {
                let m = self.module(t, "module", None)?;
                facts.push(int_fact("rank", kaehler::module_rank(&m)?));
            }
            TaskKind::ModuleDim => {
                let m = self.module(t, "module", None)?;
                facts.push(dim_fact("dim", m.dim_k()));
                facts.push(int_fact("mu", m.mu()?));
                facts.push(bool_fact("zero", m.is_zero()));
                facts.push(bool_fact("killed_by_m", m.killed_by_maximal_ideal()));
            }
            TaskKind::Frobenius => {
                let n_max = self.int(t, "n_max").map(|v| v as u32).or(self.opts.frobenius_max).unwrap_or(DEFAULT_FROBENIUS_MAX);
                let c = match self.word(t, "complex").unwrap_or("identity") {
                    "identity" => {
                        let m = self.module(t, "module", None)?;
                        let id = RMatrix::identity(&ring, m.ngens());
                        Complex::new(vec![m.clone(), m], vec![id])?
                    }
                    "koszul" => {
                        let f = self.required_polys(t, "elements")?;
                        let [f] = f.as_slice() else {
                            return Err(unknown("a Koszul complex here takes one element".into()));
                        };
                        let deg = ring.degree_of(f).unwrap_or(0);
                        let d = RMatrix::from_columns(1, vec![vec![f.clone()]])?;
                        FreeComplex::new(&ring, vec![vec![0], vec![deg]], vec![d])?.to_complex()
                    }
                    "maps" => self.displayed_complex(t)?.to_complex(),
                    other => return Err(unknown(format!("complex {other}; expected identity, koszul or maps"))),
                };
                let rep = frobenius::acyclicity_report(&c, n_max, bound, backend, self.opts.exec)?;
                facts.push(int_fact("twists", rep.twists.len()));
                for tw in &rep.twists {
                    let dims: Vec<String> = tw.higher_homology.iter().map(|h| h.map_or("infinite".into(), |d| d.to_string())).collect();
                    facts.push(text_fact(&format!("homology_n{}", tw.n), &dims.join(", ")));
                }
                facts.push(bool_fact("acyclic", rep.all_acyclic()));
            }
        }
        Ok(facts)
    }

    fn save(&mut self, t: &Task, value: Stored) {
        if let Some(n) = &t.name {
            self.store.insert(n.clone(), value);
        }
    }
}

/// `coker(d_1) = M` as quotients of the same graded free module.
fn presents(c: &FreeComplex, m: &PresentedModule) -> bool {
    let ring = c.ring();
    if c.degrees(0) != m.degrees() {
        return false;
    }
    let Ok(h0) = PresentedModule::cokernel(ring, c.degrees(0).to_vec(), c.map(1).clone()) else {
        return false;
    };
    c.map(1).columns().iter().all(|v| m.is_zero_element(v)) && m.relations().columns().iter().all(|v| h0.is_zero_element(v))
}

fn span_equal(ring: &QuotientRing, a: &[Polynomial], b: &[Polynomial]) -> bool {
    let (Some(dim), true) = (ring.dim_k(), ring.is_artinian()) else {
        return false;
    };
    let coords = |v: &[Polynomial]| -> Option<Subspace> {
        let cs = v.iter().map(|p| ring.coords(p).ok()).collect::<Option<Vec<_>>>()?;
        Some(Subspace::spanned_by(ring.field(), dim, cs))
    };
    match (coords(a), coords(b)) {
        (Some(x), Some(y)) => x.contains_subspace(&y) && y.contains_subspace(&x),
        _ => false,
    }
}

fn check(ring: &QuotientRing, facts: &[Fact], e: &Expectation) -> Result<(), String> {
    let Some(f) = facts.iter().find(|f| f.key == e.fact) else {
        return Err(format!("{}: no such fact (line {})", e.fact, e.line));
    };
    let ok = match &e.expected {
        Expected::Ideal(want) => f.polys.as_ref().is_some_and(|have| ideals::ideals_equal(ring, have, want)),
        Expected::Span(want) => f.polys.as_ref().is_some_and(|have| span_equal(ring, have, want)),
        Expected::Nonzero => !matches!(f.value.as_str(), "0" | "false" | "\"0\"" | "\"\""),
        Expected::AtMost(n) => f.value.parse::<i64>().is_ok_and(|v| v <= *n),
        Expected::AtLeast(n) => f.value.parse::<i64>().is_ok_and(|v| v >= *n),
        Expected::Text(want) => normalize(&f.value) == *want,
    };
    if ok {
        Ok(())
    } else {
        let want = match &e.expected {
            Expected::Ideal(p) | Expected::Span(p) => poly_list(p),
            Expected::Nonzero => "nonzero".into(),
            Expected::AtMost(n) => format!("<= {n}"),
            Expected::AtLeast(n) => format!(">= {n}"),
            Expected::Text(s) => s.clone(),
        };
        Err(format!("{}: expected {want}, found {} (line {})", e.fact, f.value, e.line))
    }
}

pub fn run_scenario(s: &Scenario, opts: Options) -> Report {
    let start = Instant::now();
    let mut runner = Runner { scenario: s, opts, store: HashMap::new(), der_cache: HashMap::new() };
    let mut outcomes = Vec::new();
    for t in &s.tasks {
        let t0 = Instant::now();
        let (facts, error) = match runner.run_task(t) {
            Ok(f) => (f, None),
            Err(e) => (vec![fact("error", error_code(&e)), text_fact("error_message", &e.to_string())], Some(e)),
        };
        let elapsed = t0.elapsed();
        let mut failures = Vec::new();
        if let Some(e) = &error {
            if !t.expectations.iter().any(|x| x.fact == "error") {
                failures.push(format!("engine error: {e}"));
            }
        }
        for e in &t.expectations {
            if let Err(why) = check(&s.ring, &facts, e) {
                failures.push(why);
            }
        }
        outcomes.push(TaskOutcome { id: t.id.clone(), kind: t.kind, facts, checked: t.expectations.len(), failures, error, elapsed });
    }
    Report { scenario: s.name.clone(), title: s.title.clone(), outcomes, elapsed: start.elapsed() }
}
