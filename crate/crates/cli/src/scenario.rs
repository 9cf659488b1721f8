//! Scenario files: INI-style sections with `key = value` lines.
//!
//! ```text
//! [ring]
//! field = 2                 # a prime, or Q
//! variables = X, Y
//! weights = 1, 1            # optional, positive
//! ideal = "X^2", "Y^2"
//! domain = false            # optional assertion that R is a domain
//!
//! [derivation D]
//! X = "X"                   # unlisted variables map to 0
//!
//! [task 1]
//! kind = maximal_differential_ideal
//! derivations = D
//! name = B                  # later tasks refer to the result as @B
//! expect_ideal = "X", "Y"
//! ```

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use diffalg::module::RMatrix;
use diffalg::quotient::QuotientRing;
use diffalg::{Field, PolyRing, Polynomial};

use crate::parse::{parse_matrix, parse_polynomial, ParseError};

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub title: Option<String>,
    pub ring: Arc<QuotientRing>,
    pub derivations: Vec<NamedDerivation>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Debug)]
pub struct NamedDerivation {
    pub name: String,
    pub images: Vec<Polynomial>,
}

#[derive(Clone, Debug)]
pub struct Task {
    pub id: String,
    pub kind: TaskKind,
    pub line: usize,
    pub name: Option<String>,
    pub params: BTreeMap<String, Param>,
    pub expectations: Vec<Expectation>,
}

impl Task {
    pub fn param(&self, key: &str) -> Option<&Param> {
        self.params.get(key)
    }
}

#[derive(Clone, Debug)]
pub enum Param {
    Polys(Vec<Polynomial>),
    /// `@name`, the stored result of an earlier task.
    Ref(String),
    Matrices(Vec<RMatrix>),
    Words(Vec<String>),
    Ints(Vec<i64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ParamType {
    /// Quoted expressions, or a single `@name`.
    Polys,
    Matrices,
    Word,
    Words,
    Int,
    Ints,
    /// `R`, `k`, `omega`, `der`, `der_coker` or `@name`.
    Module,
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub fact: String,
    pub expected: Expected,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub enum Expected {
    /// Equality of ideals of `R`.
    Ideal(Vec<Polynomial>),
    /// Equality of k-subspaces of an artinian `R`.
    Span(Vec<Polynomial>),
    Nonzero,
    AtMost(i64),
    AtLeast(i64),
    Text(String),
}

macro_rules! task_kinds {
    ($($variant:ident => $name:literal [$($key:literal : $ty:ident),*]),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum TaskKind { $($variant),* }

        impl TaskKind {
            pub const ALL: &'static [TaskKind] = &[$(TaskKind::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(TaskKind::$variant => $name),* }
            }

            fn params(self) -> &'static [(&'static str, ParamType)] {
                match self { $(TaskKind::$variant => &[$(($key, ParamType::$ty)),*]),* }
            }
        }
    };
}

task_kinds! {
    WellDefined => "well_defined" ["derivation": Word],
    ApplyDerivation => "apply_derivation" ["derivation": Word, "elements": Polys],
    DifferentialIdeal => "differential_ideal" ["derivations": Words, "ideal": Polys],
    MaximalDifferentialIdeal => "maximal_differential_ideal" ["derivations": Words, "mode": Word, "candidate": Polys],
    Socle => "socle" [],
    Gorenstein => "gorenstein" [],
    EmbeddingDimension => "embedding_dimension" [],
    KrullDimension => "krull_dimension" ["ideal": Polys],
    Depth => "depth" ["module": Module],
    Length => "length" ["ideal": Polys],
    MinimalGenerators => "minimal_generators" ["ideal": Polys],
    Annihilator => "annihilator" ["elements": Polys],
    CiPresentation => "ci_presentation" [],
    CompleteIntersection => "complete_intersection" ["ideal": Polys],
    RegularSequence => "regular_sequence" ["elements": Polys],
    Omega => "omega" [],
    Der => "der" [],
    Ext => "ext" ["module": Module, "i": Int],
    Tor => "tor" ["module": Module, "with": Module, "i": Int],
    FreeResolution => "free_resolution" ["module": Module, "length": Int],
    Complex => "complex" ["maps": Matrices, "degrees": Ints, "resolves": Module],
    Biduality => "biduality" ["module": Module],
    TotallyReflexive => "totally_reflexive" ["module": Module, "ext_bound": Int],
    Gdim => "gdim" ["module": Module, "ext_bound": Int],
    IsFree => "is_free" ["module": Module],
    ModuleRank => "module_rank" ["module": Module],
    ModuleDim => "module_dim" ["module": Module],
    Frobenius => "frobenius" ["complex": Word, "module": Module, "elements": Polys, "maps": Matrices, "degrees": Ints, "n_max": Int],
}

/// Keys every task accepts besides its own parameters and `expect_*`.
const COMMON_KEYS: &[(&str, ParamType)] = &[("bound", ParamType::Int), ("backend", ParamType::Word)];

/// Facts whose expectations compare ideals or k-spans rather than text.
const IDEAL_FACTS: &[&str] = &["ideal", "generators"];
const SPAN_FACTS: &[&str] = &["basis"];

pub const BUILTIN_MODULES: &[&str] = &["R", "k", "omega", "der", "der_coker"];

impl std::fmt::Display for TaskKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TaskKind::ALL.iter().copied().find(|k| k.name() == s).ok_or_else(|| format!("unknown task kind {s}"))
    }
}

/// One comma-separated item of a value, with its column on the line.
#[derive(Clone, Debug)]
enum Item {
    Quoted(String, usize),
    Bare(String, usize),
}

impl Item {
    fn col(&self) -> usize {
        match self {
            Item::Quoted(_, c) | Item::Bare(_, c) => *c,
        }
    }
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    raw: String,
    items: Vec<Item>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct Section {
    header: String,
    line: usize,
    entries: Vec<Entry>,
}

fn split_items(value: &str, line: usize, offset: usize) -> Result<Vec<Item>, ParseError> {
    let chars: Vec<char> = value.chars().collect();
    let mut items = Vec::new();
    let mut i = 0;
    loop {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i == chars.len() {
            if !items.is_empty() {
                return Err(ParseError::new(line, offset + i, "empty list item"));
            }
            return Ok(items);
        }
        let col = offset + i;
        if chars[i] == '"' {
            let start = i + 1;
            let Some(len) = chars[start..].iter().position(|&c| c == '"') else {
                return Err(ParseError::new(line, col, "unterminated string"));
            };
            items.push(Item::Quoted(chars[start..start + len].iter().collect(), col + 1));
            i = start + len + 1;
        } else {
            let start = i;
            while i < chars.len() && chars[i] != ',' {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            items.push(Item::Bare(text.trim_end().to_string(), col));
        }
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i == chars.len() {
            return Ok(items);
        }
        if chars[i] != ',' {
            return Err(ParseError::new(line, offset + i, "expected ',' between list items"));
        }
        i += 1;
        if i == chars.len() || chars[i..].iter().all(|c| c.is_whitespace()) {
            return Err(ParseError::new(line, offset + i, "empty list item"));
        }
    }
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

fn sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut out: Vec<Section> = Vec::new();
    for (n, raw_line) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = strip_comment(raw_line);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(header) = rest.strip_suffix(']') else {
                return Err(ParseError::new(line_no, indent + 1, "section header must end with ']'"));
            };
            out.push(Section { header: header.trim().to_string(), line: line_no, entries: Vec::new() });
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(ParseError::new(line_no, indent + 1, "expected 'key = value'"));
        };
        let Some(section) = out.last_mut() else {
            return Err(ParseError::new(line_no, indent + 1, "entry before the first section"));
        };
        let key = line[..eq].trim().to_string();
        if key.is_empty() {
            return Err(ParseError::new(line_no, indent + 1, "missing key"));
        }
        let value = &line[eq + 1..];
        let col = line[..eq + 1].chars().count() + 1;
        if section.entries.iter().any(|e| e.key == key) {
            return Err(ParseError::new(line_no, indent + 1, format!("duplicate key {key}")));
        }
        let items = split_items(value, line_no, col)?;
        section.entries.push(Entry { key, raw: value.trim().to_string(), items, line: line_no, col });
    }
    Ok(out)
}

fn bare_words(e: &Entry) -> Result<Vec<String>, ParseError> {
    e.items
        .iter()
        .map(|it| match it {
            Item::Bare(s, _) => Ok(s.clone()),
            Item::Quoted(_, c) => Err(ParseError::new(e.line, *c, format!("{} expects unquoted words", e.key))),
        })
        .collect()
}

fn single_word(e: &Entry) -> Result<String, ParseError> {
    let words = bare_words(e)?;
    if words.len() != 1 {
        return Err(ParseError::new(e.line, e.col, format!("{} expects a single value", e.key)));
    }
    Ok(words.into_iter().next().expect("one word"))
}

fn integers(e: &Entry) -> Result<Vec<i64>, ParseError> {
    e.items
        .iter()
        .map(|it| match it {
            Item::Bare(s, c) => s.parse::<i64>().map_err(|_| ParseError::new(e.line, *c, format!("{} expects integers, found {s}", e.key))),
            Item::Quoted(_, c) => Err(ParseError::new(e.line, *c, format!("{} expects integers", e.key))),
        })
        .collect()
}

fn polys(ring: &Arc<PolyRing>, e: &Entry) -> Result<Vec<Polynomial>, ParseError> {
    e.items
        .iter()
        .map(|it| match it {
            Item::Quoted(s, c) => parse_polynomial(ring, s).map_err(|err| err.at_line(e.line, c - 1)),
            Item::Bare(s, c) => Err(ParseError::new(e.line, *c, format!("expressions must be quoted: {s}"))),
        })
        .collect()
}

fn boolean(e: &Entry) -> Result<bool, ParseError> {
    match single_word(e)?.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(ParseError::new(e.line, e.col, format!("expected true or false, found {other}"))),
    }
}

fn build_ring(section: &Section) -> Result<(Arc<QuotientRing>, Option<String>), ParseError> {
    let mut field = None;
    let mut vars: Option<(Vec<String>, &Entry)> = None;
    let mut weights: Option<(Vec<i64>, &Entry)> = None;
    let mut ideal: Option<&Entry> = None;
    let mut domain = false;
    let mut title = None;
    for e in &section.entries {
        match e.key.as_str() {
            "field" => {
                let w = single_word(e)?;
                let f = match w.as_str() {
                    "Q" | "QQ" | "0" => Field::Rationals,
                    p => {
                        let p: u32 = p.parse().map_err(|_| ParseError::new(e.line, e.col, format!("field must be a prime or Q, found {p}")))?;
                        Field::prime(p).map_err(|err| ParseError::new(e.line, e.col, err.to_string()))?
                    }
                };
                field = Some(f);
            }
            "variables" => vars = Some((bare_words(e)?, e)),
            "weights" => weights = Some((integers(e)?, e)),
            "ideal" => ideal = Some(e),
            "domain" => domain = boolean(e)?,
            "title" => match e.items.as_slice() {
                [Item::Quoted(s, _)] => title = Some(s.clone()),
                _ => return Err(ParseError::new(e.line, e.col, "title must be one quoted string")),
            },
            other => return Err(ParseError::new(e.line, 1, format!("unknown key {other} in [ring]"))),
        }
    }
    let here = |m: &str| ParseError::new(section.line, 1, m.to_string());
    let field = field.ok_or_else(|| here("[ring] needs a field"))?;
    let (vars, vars_entry) = vars.ok_or_else(|| here("[ring] needs variables"))?;
    let mut seen = HashSet::new();
    for (v, it) in vars.iter().zip(&vars_entry.items) {
        let ok = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::new(vars_entry.line, it.col(), format!("invalid variable name {v}")));
        }
        if !seen.insert(v.clone()) {
            return Err(ParseError::new(vars_entry.line, it.col(), format!("variable {v} declared twice")));
        }
    }
    let weights = match weights {
        None => vec![1; vars.len()],
        Some((w, e)) => {
            if w.len() != vars.len() {
                return Err(ParseError::new(e.line, e.col, format!("{} weights for {} variables", w.len(), vars.len())));
            }
            if let Some(i) = w.iter().position(|&x| x <= 0 || x > u32::MAX as i64) {
                return Err(ParseError::new(e.line, e.items[i].col(), "weights must be positive"));
            }
            w.into_iter().map(|x| x as u32).collect()
        }
    };
    let ambient = PolyRing::weighted(field, vars, weights).map_err(|err| here(&err.to_string()))?;
    let gens = match ideal {
        Some(e) => polys(&ambient, e)?,
        None => Vec::new(),
    };
    let ring = if domain { QuotientRing::domain(&ambient, gens) } else { QuotientRing::new(&ambient, gens) };
    let ring = ring.map_err(|err| ParseError::new(ideal.map_or(section.line, |e| e.line), 1, err.to_string()))?;
    Ok((ring, title))
}

fn build_derivation(ring: &Arc<QuotientRing>, section: &Section, name: &str) -> Result<NamedDerivation, ParseError> {
    let ambient = ring.ambient();
    let mut images = vec![Polynomial::zero(ambient); ambient.nvars()];
    for e in &section.entries {
        let Ok(i) = ambient.var_index(&e.key) else {
            return Err(ParseError::new(e.line, 1, format!("unknown variable {}", e.key)));
        };
        let mut p = polys(ambient, e)?;
        if p.len() != 1 {
            return Err(ParseError::new(e.line, e.col, "a derivation image is one quoted expression"));
        }
        images[i] = p.remove(0);
    }
    Ok(NamedDerivation { name: name.to_string(), images })
}

struct TaskContext<'a> {
    ring: &'a Arc<QuotientRing>,
    derivations: &'a [NamedDerivation],
    names: &'a HashSet<String>,
}

fn check_ref(ctx: &TaskContext<'_>, e: &Entry, word: &str, col: usize) -> Result<(), ParseError> {
    if let Some(name) = word.strip_prefix('@') {
        if !ctx.names.contains(name) {
            return Err(ParseError::new(e.line, col, format!("@{name} is not defined by an earlier task")));
        }
    }
    Ok(())
}

fn build_param(ctx: &TaskContext<'_>, e: &Entry, ty: ParamType) -> Result<Param, ParseError> {
    match ty {
        ParamType::Polys => {
            if let [Item::Bare(w, c)] = e.items.as_slice() {
                if w.starts_with('@') {
                    check_ref(ctx, e, w, *c)?;
                    return Ok(Param::Ref(w[1..].to_string()));
                }
            }
            Ok(Param::Polys(polys(ctx.ring.ambient(), e)?))
        }
        ParamType::Matrices => e
            .items
            .iter()
            .map(|it| match it {
                Item::Quoted(s, c) => parse_matrix(ctx.ring, s).map_err(|err| err.at_line(e.line, c - 1)),
                Item::Bare(_, c) => Err(ParseError::new(e.line, *c, "matrices must be quoted")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Param::Matrices),
        ParamType::Word => Ok(Param::Words(vec![single_word(e)?])),
        ParamType::Words => {
            let words = bare_words(e)?;
            if e.key == "derivations" || e.key == "derivation" {
                for (w, it) in words.iter().zip(&e.items) {
                    if !ctx.derivations.iter().any(|d| &d.name == w) {
                        return Err(ParseError::new(e.line, it.col(), format!("unknown derivation {w}")));
                    }
                }
            }
            Ok(Param::Words(words))
        }
        ParamType::Int => {
            let v = integers(e)?;
            if v.len() != 1 || v[0] < 0 {
                return Err(ParseError::new(e.line, e.col, format!("{} expects one non-negative integer", e.key)));
            }
            Ok(Param::Ints(v))
        }
        ParamType::Ints => Ok(Param::Ints(integers(e)?)),
        ParamType::Module => {
            let w = single_word(e)?;
            if !w.starts_with('@') && !BUILTIN_MODULES.contains(&w.as_str()) {
                return Err(ParseError::new(e.line, e.col, format!("unknown module {w}; expected one of {} or @name", BUILTIN_MODULES.join(", "))));
            }
            check_ref(ctx, e, &w, e.col)?;
            Ok(Param::Words(vec![w]))
        }
    }
}

fn build_expectation(ctx: &TaskContext<'_>, e: &Entry, fact: &str) -> Result<Expectation, ParseError> {
    let ambient = ctx.ring.ambient();
    let expected = if IDEAL_FACTS.contains(&fact) || SPAN_FACTS.contains(&fact) {
        let p = polys(ambient, e)?;
        if IDEAL_FACTS.contains(&fact) {
            Expected::Ideal(p)
        } else {
            Expected::Span(p)
        }
    } else {
        let raw = e.raw.as_str();
        if raw == "nonzero" {
            Expected::Nonzero
        } else if let Some(n) = raw.strip_prefix("<=") {
            Expected::AtMost(n.trim().parse().map_err(|_| ParseError::new(e.line, e.col, "expected an integer after <="))?)
        } else if let Some(n) = raw.strip_prefix(">=") {
            Expected::AtLeast(n.trim().parse().map_err(|_| ParseError::new(e.line, e.col, "expected an integer after >="))?)
        } else if raw.is_empty() {
            return Err(ParseError::new(e.line, e.col, "empty expectation"));
        } else {
            Expected::Text(normalize(raw))
        }
    };
    Ok(Expectation { fact: fact.to_string(), expected, line: e.line })
}

/// Drops quotes and collapses whitespace so `"a",  "b"` matches `a, b`.
pub fn normalize(s: &str) -> String {
    s.replace('"', "").split_whitespace().collect::<Vec<_>>().join(" ")
}

fn build_task(ctx: &TaskContext<'_>, section: &Section, id: &str) -> Result<Task, ParseError> {
    let Some(kind_entry) = section.entries.iter().find(|e| e.key == "kind") else {
        return Err(ParseError::new(section.line, 1, format!("[task {id}] needs a kind")));
    };
    let kind: TaskKind = single_word(kind_entry)?.parse().map_err(|m: String| ParseError::new(kind_entry.line, kind_entry.col, m))?;
    let mut params = BTreeMap::new();
    let mut expectations = Vec::new();
    let mut name = None;
    for e in &section.entries {
        let key = e.key.as_str();
        if key == "kind" {
            continue;
        }
        if key == "name" {
            let w = single_word(e)?;
            if w.starts_with('@') || w.is_empty() {
                return Err(ParseError::new(e.line, e.col, "name is written without '@'"));
            }
            name = Some(w);
            continue;
        }
        if let Some(fact) = key.strip_prefix("expect_") {
            expectations.push(build_expectation(ctx, e, fact)?);
            continue;
        }
        let ty = kind.params().iter().chain(COMMON_KEYS).find(|(k, _)| *k == key).map(|(_, t)| *t);
        let Some(ty) = ty else {
            return Err(ParseError::new(e.line, 1, format!("task kind {kind} does not take {key}")));
        };
        params.insert(key.to_string(), build_param(ctx, e, ty)?);
    }
    Ok(Task { id: id.to_string(), kind, line: section.line, name, params, expectations })
}

/// Parses and validates a scenario; `name` labels the report.
pub fn parse_scenario(name: &str, text: &str) -> Result<Scenario, ParseError> {
    let secs = sections(text)?;
    let mut iter = secs.iter();
    let Some(first) = iter.next() else {
        return Err(ParseError::new(1, 1, "missing [ring] section"));
    };
    if first.header != "ring" {
        return Err(ParseError::new(first.line, 1, "the first section must be [ring]"));
    }
    let (ring, title) = build_ring(first)?;
    let mut derivations: Vec<NamedDerivation> = Vec::new();
    let mut tasks: Vec<Task> = Vec::new();
    let mut names = HashSet::new();
    for s in iter {
        let mut words = s.header.split_whitespace();
        let head = words.next().unwrap_or("");
        let arg = words.next();
        if words.next().is_some() {
            return Err(ParseError::new(s.line, 1, format!("malformed section header [{}]", s.header)));
        }
        match (head, arg) {
            ("ring", _) => return Err(ParseError::new(s.line, 1, "duplicate [ring] section")),
            ("derivation", Some(n)) => {
                if !tasks.is_empty() {
                    return Err(ParseError::new(s.line, 1, "derivations must precede the tasks"));
                }
                if derivations.iter().any(|d| d.name == n) {
                    return Err(ParseError::new(s.line, 1, format!("derivation {n} declared twice")));
                }
                derivations.push(build_derivation(&ring, s, n)?);
            }
            ("task", Some(id)) => {
                if tasks.iter().any(|t| t.id == id) {
                    return Err(ParseError::new(s.line, 1, format!("task {id} declared twice")));
                }
                let ctx = TaskContext { ring: &ring, derivations: &derivations, names: &names };
                let task = build_task(&ctx, s, id)?;
                if let Some(n) = &task.name {
                    names.insert(n.clone());
                }
                tasks.push(task);
            }
            _ => return Err(ParseError::new(s.line, 1, format!("unknown section [{}]", s.header))),
        }
    }
    Ok(Scenario { name: name.to_string(), title, ring, derivations, tasks })
}
