//! JSON forms of functionals, setups, scenarios, generators and module
//! elements, with conversion into core types. Conversion failures are
//! reported as violations carrying a field path.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use whittaker_core::analysis::SearchParams;
use whittaker_core::lie::{Generator, Sl2Basis};
use whittaker_core::pbw::{Letter, ModuleElement, PairKind, PbwMonomial, SetupData, Violation, WhittakerSetup};
use whittaker_core::{ExpPoly, Functional, LaurentPoly, OracleRule, Scalar, Window};

fn violation(path: impl Into<String>, message: impl Into<String>) -> Violation {
    Violation { path: path.into(), message: message.into() }
}

/// A rational written as a JSON integer or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Str(String),
}

impl ScalarJson {
    pub fn to_scalar(&self, path: &str) -> Result<Scalar, Violation> {
        match self {
            ScalarJson::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarJson::Str(s) => Scalar::from_str(s).map_err(|e| violation(path, format!("{e}"))),
        }
    }
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson::Str(s.to_string())
    }
}

/// One term `c·n^power·λⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpTermJson {
    pub lambda: ScalarJson,
    #[serde(default)]
    pub power: usize,
    pub coeff: ScalarJson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Declared {
    #[serde(rename = "in-E")]
    InE,
    #[serde(rename = "not-in-E")]
    NotInE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleName {
    HalfSquarePower,
    AbsFactorial,
}

/// The `kind`-tagged form of a functional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaggedFunctionalJson {
    Zero,
    /// `Σ c·n^power·λⁿ`.
    Exp { terms: Vec<ExpTermJson> },
    /// A catalog rule, optionally shifted by a Laurent polynomial given as
    /// `[exponent, coefficient]` pairs.
    Oracle {
        rule: RuleName,
        #[serde(default)]
        base: Option<u64>,
        declared: Declared,
        #[serde(default)]
        shift: Vec<(i64, ScalarJson)>,
    },
}

impl TaggedFunctionalJson {
    pub fn to_functional(&self, path: &str) -> Result<Functional, Vec<Violation>> {
        match self {
            TaggedFunctionalJson::Zero => Ok(Functional::zero()),
            TaggedFunctionalJson::Exp { terms } => {
                let mut acc = ExpPoly::zero();
                let mut errs = Vec::new();
                for (i, t) in terms.iter().enumerate() {
                    let p = format!("{path}.terms.{i}");
                    let lambda = t.lambda.to_scalar(&format!("{p}.lambda"));
                    let coeff = t.coeff.to_scalar(&format!("{p}.coeff"));
                    match (lambda, coeff) {
                        (Ok(l), Ok(c)) => match ExpPoly::term(l, t.power, c) {
                            Ok(e) => acc = acc.add(&e),
                            Err(e) => errs.push(violation(format!("{p}.lambda"), e.to_string())),
                        },
                        (l, c) => errs.extend(l.err().into_iter().chain(c.err())),
                    }
                }
                if errs.is_empty() {
                    Ok(acc.into())
                } else {
                    Err(errs)
                }
            }
            TaggedFunctionalJson::Oracle { rule, base, declared, shift } => {
                let rule = match (rule, base) {
                    (RuleName::HalfSquarePower, Some(b)) => OracleRule::half_square_power(*b)
                        .map_err(|e| vec![violation(format!("{path}.base"), e.to_string())])?,
                    (RuleName::HalfSquarePower, None) => {
                        return Err(vec![violation(format!("{path}.base"), "half-square-power needs a base")])
                    }
                    (RuleName::AbsFactorial, None) => OracleRule::AbsFactorial,
                    (RuleName::AbsFactorial, Some(_)) => {
                        return Err(vec![violation(format!("{path}.base"), "abs-factorial takes no base")])
                    }
                };
                let mut f = Functional::oracle(rule, *declared == Declared::InE);
                if !shift.is_empty() {
                    let mut poly = LaurentPoly::zero();
                    for (i, (e, c)) in shift.iter().enumerate() {
                        let c = c.to_scalar(&format!("{path}.shift.{i}")).map_err(|v| vec![v])?;
                        poly.add_term(*e, &c);
                    }
                    f = f.shift(&poly);
                }
                Ok(f)
            }
        }
    }
}

/// One component `Σ_k coeffs[k]·n^k·λⁿ` of the canonical exp-polynomial form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpComponentJson {
    pub lambda: ScalarJson,
    pub coeffs: Vec<ScalarJson>,
}

/// The canonical oracle form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<ScalarJson>,
    #[serde(rename = "declared_in_E")]
    pub declared_in_e: bool,
}

/// A functional on the Laurent polynomials, given by its values on `tⁿ`:
/// either the `kind`-tagged form or one of the canonical objects
/// `{"exp_poly": [...]}` and `{"oracle": {...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FunctionalJson {
    Tagged(TaggedFunctionalJson),
    ExpPoly { exp_poly: Vec<ExpComponentJson> },
    Oracle { oracle: OracleJson },
}

impl<'de> Deserialize<'de> for FunctionalJson {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        fn inner<T: serde::de::DeserializeOwned, E: Error>(v: serde_json::Value, prefix: &str) -> Result<T, E> {
            serde_path_to_error::deserialize(v).map_err(|e| {
                let path = e.path().to_string();
                let at = match path.as_str() {
                    "." => prefix.to_string(),
                    p if p.starts_with('[') || prefix.is_empty() => format!("{prefix}{p}"),
                    p => format!("{prefix}.{p}"),
                };
                if at.is_empty() {
                    E::custom(e.into_inner())
                } else {
                    E::custom(format!("{at}: {}", e.into_inner()))
                }
            })
        }
        let v = serde_json::Value::deserialize(d)?;
        let Some(map) = v.as_object() else {
            return Err(D::Error::custom("a functional is a JSON object"));
        };
        if map.len() == 1 && map.contains_key("exp_poly") {
            let exp_poly = inner(v["exp_poly"].clone(), "exp_poly")?;
            Ok(FunctionalJson::ExpPoly { exp_poly })
        } else if map.len() == 1 && map.contains_key("oracle") {
            let oracle = inner(v["oracle"].clone(), "oracle")?;
            Ok(FunctionalJson::Oracle { oracle })
        } else if map.contains_key("kind") {
            Ok(FunctionalJson::Tagged(inner(v, "")?))
        } else {
            Err(D::Error::custom("expected a \"kind\" tag, or a single \"exp_poly\" or \"oracle\" key"))
        }
    }
}

impl FunctionalJson {
    pub fn to_functional(&self, path: &str) -> Result<Functional, Vec<Violation>> {
        match self {
            FunctionalJson::Tagged(t) => t.to_functional(path),
            FunctionalJson::ExpPoly { exp_poly } => {
                let mut acc = ExpPoly::zero();
                let mut errs = Vec::new();
                for (i, c) in exp_poly.iter().enumerate() {
                    let p = format!("{path}.exp_poly.{i}");
                    let lambda = c.lambda.to_scalar(&format!("{p}.lambda"));
                    let coeffs: Result<Vec<Scalar>, Violation> = c
                        .coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, x)| x.to_scalar(&format!("{p}.coeffs.{k}")))
                        .collect();
                    match (lambda, coeffs) {
                        (Ok(l), Ok(cs)) => match ExpPoly::new([(l, cs)]) {
                            Ok(e) => acc = acc.add(&e),
                            Err(e) => errs.push(violation(p, e.to_string())),
                        },
                        (l, c) => errs.extend(l.err().into_iter().chain(c.err())),
                    }
                }
                if errs.is_empty() {
                    Ok(acc.into())
                } else {
                    Err(errs)
                }
            }
            FunctionalJson::Oracle { oracle } => {
                let p = format!("{path}.oracle");
                let rule = match oracle.rule.as_str() {
                    "half_square_power" => RuleName::HalfSquarePower,
                    "abs_factorial" => RuleName::AbsFactorial,
                    other => {
                        return Err(vec![violation(
                            format!("{p}.rule"),
                            format!("unknown rule {other:?}; expected half_square_power or abs_factorial"),
                        )])
                    }
                };
                let base = match &oracle.base {
                    None => None,
                    Some(b) => {
                        let b = b.to_scalar(&format!("{p}.base")).map_err(|v| vec![v])?;
                        match b.to_i64().and_then(|n| u64::try_from(n).ok()) {
                            Some(n) => Some(n),
                            None => return Err(vec![violation(format!("{p}.base"), "the base is a positive integer")]),
                        }
                    }
                };
                let declared = if oracle.declared_in_e { Declared::InE } else { Declared::NotInE };
                TaggedFunctionalJson::Oracle { rule, base, declared, shift: Vec::new() }.to_functional(path)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupJson {
    pub algebra: String,
    pub pair: String,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub psi: BTreeMap<String, FunctionalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<FunctionalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_c: Option<FunctionalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<ScalarJson>,
}

pub fn parse_pair(name: &str) -> Option<PairKind> {
    [PairKind::GeqN, PairKind::GMinus, PairKind::VirGeqN, PairKind::Sl2E]
        .into_iter()
        .find(|p| p.name() == name)
}

impl SetupJson {
    /// Builds a validated setup, or every violation found.
    pub fn to_setup(&self) -> Result<WhittakerSetup, Vec<Violation>> {
        let mut errs = Vec::new();
        let Some(pair) = parse_pair(&self.pair) else {
            return Err(vec![violation(
                "setup.pair",
                format!("unknown pair {:?}; expected geq-n, g-minus, vir-geq-n or sl2-e", self.pair),
            )]);
        };
        if self.algebra != pair.algebra().name() {
            errs.push(violation(
                "setup.algebra",
                format!("the {} pair lives in {}, not {:?}", pair, pair.algebra().name(), self.algebra),
            ));
        }
        let mut data = SetupData::new(pair);
        data.n = self.n;
        for (key, f) in &self.psi {
            let path = format!("setup.psi.{key}");
            match key.parse::<i64>() {
                Ok(i) => match f.to_functional(&path) {
                    Ok(f) => {
                        data.psi.insert(i, f);
                    }
                    Err(v) => errs.extend(v),
                },
                Err(_) => errs.push(violation(path, "psi keys are integer degrees")),
            }
        }
        let mut slot = |f: &Option<FunctionalJson>, path: &str| -> Option<Functional> {
            f.as_ref().and_then(|f| f.to_functional(path).map_err(|v| errs.extend(v)).ok())
        };
        data.phi = slot(&self.phi, "setup.phi");
        data.phi_c = slot(&self.phi_c, "setup.phi_c");
        if let Some(l) = &self.level {
            match l.to_scalar("setup.level") {
                Ok(l) => data.level = Some(l),
                Err(v) => errs.push(v),
            }
        }
        errs.extend(data.violations());
        if !errs.is_empty() {
            return Err(errs);
        }
        WhittakerSetup::from_data(data).map_err(|e| e.0)
    }
}

/// Optional overrides of the per-pair search and classification defaults.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lth_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_window: Option<(i64, i64)>,
}

fn window(path: &str, (lo, hi): (i64, i64)) -> Result<Window, Violation> {
    if lo > hi {
        return Err(violation(path, format!("empty window [{lo}, {hi}]")));
    }
    Ok(Window::new(lo, hi))
}

impl ParamsJson {
    /// Later fields win: `self` overrides the defaults, `over` overrides
    /// `self`.
    pub fn merged(&self, over: &ParamsJson) -> ParamsJson {
        ParamsJson {
            lth_max: over.lth_max.or(self.lth_max),
            exp_window: over.exp_window.or(self.exp_window),
            deg_window: over.deg_window.or(self.deg_window),
            class_degree: over.class_degree.or(self.class_degree),
            class_window: over.class_window.or(self.class_window),
        }
    }

    pub fn resolve(&self, setup: &WhittakerSetup) -> Result<SearchParams, Vec<Violation>> {
        let mut p = SearchParams::defaults(setup);
        let mut errs = Vec::new();
        if let Some(l) = self.lth_max {
            p.lth_max = l;
        }
        if let Some(w) = self.exp_window {
            window("params.exp_window", w).map(|w| p.exp_window = w).unwrap_or_else(|v| errs.push(v));
        }
        if let Some(w) = self.deg_window {
            if matches!(setup.pair(), PairKind::GMinus | PairKind::VirGeqN) {
                window("params.deg_window", w).map(|w| p.deg_window = Some(w)).unwrap_or_else(|v| errs.push(v));
            } else {
                errs.push(violation("params.deg_window", format!("the {} pair has no degree window", setup.pair())));
            }
        }
        if let Some(d) = self.class_degree {
            p.class_degree = d;
        }
        if let Some(w) = self.class_window {
            window("params.class_window", w).map(|w| p.class_window = w).unwrap_or_else(|v| errs.push(v));
        }
        if errs.is_empty() {
            Ok(p)
        } else {
            Err(errs)
        }
    }
}

/// What a corpus run must reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_dimension: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioJson {
    pub name: String,
    pub setup: SetupJson,
    #[serde(default)]
    pub params: ParamsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedJson>,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub setup: WhittakerSetup,
    pub params: ParamsJson,
    pub expected: Option<ExpectedJson>,
}

/// Why an input could not be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub source: String,
    pub violations: Vec<Violation>,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: invalid input", self.source)?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SchemaError {}

/// Deserializes `text`, reporting type errors with the field path.
pub fn from_json<T: for<'de> Deserialize<'de>>(source: &str, text: &str) -> Result<T, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::from("(root)") } else { path };
        SchemaError { source: source.into(), violations: vec![violation(path, e.into_inner().to_string())] }
    })
}

impl Scenario {
    pub fn parse(source: &str, text: &str) -> Result<Scenario, SchemaError> {
        let raw: ScenarioJson = from_json(source, text)?;
        let setup = raw.setup.to_setup().map_err(|violations| SchemaError { source: source.into(), violations })?;
        raw.params
            .resolve(&setup)
            .map_err(|violations| SchemaError { source: source.into(), violations })?;
        Ok(Scenario { name: raw.name, setup, params: raw.params, expected: raw.expected })
    }
}

/// A block `(x ⊗ t^k)^mult`; `deg` for Witt/Virasoro, `gen` for `sl2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen: Option<String>,
    pub k: i64,
    #[serde(default = "one")]
    pub mult: u32,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: ScalarJson,
    pub monomial: Vec<FactorJson>,
}

pub type ElementJson = Vec<TermJson>;

pub fn element_to_json(u: &ModuleElement) -> ElementJson {
    u.iter()
        .map(|(m, c)| TermJson {
            coeff: c.into(),
            monomial: m
                .factors()
                .into_iter()
                .map(|f| {
                    let (deg, gen) = match f.letter {
                        Letter::D(n) => (Some(n), None),
                        Letter::F => (None, Some("f".into())),
                        Letter::H => (None, Some("h".into())),
                    };
                    FactorJson { deg, gen, k: f.k, mult: f.mult }
                })
                .collect(),
        })
        .collect()
}

pub fn element_from_json(u: &ElementJson, path: &str) -> Result<ModuleElement, Vec<Violation>> {
    let mut out = ModuleElement::zero();
    let mut errs = Vec::new();
    for (i, t) in u.iter().enumerate() {
        let p = format!("{path}.{i}");
        let c = match t.coeff.to_scalar(&format!("{p}.coeff")) {
            Ok(c) => c,
            Err(v) => {
                errs.push(v);
                continue;
            }
        };
        let mut factors = Vec::new();
        for (j, f) in t.monomial.iter().enumerate() {
            let fp = format!("{p}.monomial.{j}");
            let letter = match (f.deg, f.gen.as_deref()) {
                (Some(n), None) => Letter::D(n),
                (None, Some("f")) => Letter::F,
                (None, Some("h")) => Letter::H,
                _ => {
                    errs.push(violation(fp, "a factor has either \"deg\" or \"gen\": \"f\" | \"h\""));
                    continue;
                }
            };
            factors.extend(std::iter::repeat_n((letter, f.k), f.mult as usize));
        }
        out.add_term(PbwMonomial::from_factors(factors), &c);
    }
    if errs.is_empty() {
        Ok(out)
    } else {
        Err(errs)
    }
}

/// A single generator: `{"deg": n, "k": k}`, `{"central": true, "k": k}`
/// for the Virasoro centre, `{"gen": "e" | "f" | "h", "k": k}` or
/// `{"gen": "K"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

impl GeneratorJson {
    pub fn to_generator(&self, pair: PairKind, path: &str) -> Result<Generator, Violation> {
        let virasoro = pair == PairKind::VirGeqN;
        let sl2 = |x| self.k.map(|k| Generator::Sl2 { x, k });
        let g = match (self.deg, self.gen.as_deref(), self.central.unwrap_or(false), self.k) {
            (Some(n), None, false, Some(k)) if virasoro => Some(Generator::VirD { n, k }),
            (Some(n), None, false, Some(k)) => Some(Generator::WittD { n, k }),
            (None, None, true, Some(k)) if virasoro => Some(Generator::VirC { k }),
            (None, Some("e"), false, _) => sl2(Sl2Basis::E),
            (None, Some("f"), false, _) => sl2(Sl2Basis::F),
            (None, Some("h"), false, _) => sl2(Sl2Basis::H),
            (None, Some("K"), false, None) => Some(Generator::Sl2K),
            _ => None,
        };
        let g = g.ok_or_else(|| violation(path, "not a generator of this pair's algebra"))?;
        g.check(pair.algebra()).map_err(|e| violation(path, e.to_string()))?;
        Ok(g)
    }
}
