//! Named obstruction scenarios: each wires the computational modules into
//! one case analysis and produces a [`Report`] with a step-by-step trace,
//! the imported hypotheses it relies on, and a verdict.
//!
//! Imported topological facts are never computed here. They appear as
//! [`HypothesisFlag`]s with a literature citation, default to `holds: true`,
//! and can be switched off from a config file to see which conclusions
//! depend on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::forms_lattice::{enumerate_even_splittings, lens_qr_bounding, rohlin_constraint, square_units, EvenFormClass, FormError};
use crate::knots::{Knot, KnotError, KnotSpec};
use crate::legendrian::{rot, slice_bennequin_genus_bound, stein_condition, stein_fixture, tb, FrontError};
use crate::linking_calculus::{canonical_class, first_homology, self_linking_form, zero_classes, LinkingError};
use crate::seifert_algebra::{
    algebraic_slice_verdict, alexander_polynomial, concordance_inverse, connected_sum, parallel_cable, signature,
    SeifertError, SeifertMatrix, SliceVerdict,
};
use crate::surgery_model::{dotted_pair_presentation, PresentationError};
use crate::twist_calculus::{extension_subgroup, seifert_orbit_class, to_alpha_beta, TwistClass, TwistError};

pub const SCHEMA_VERSION: &str = "dehnkit.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    SphereLens,
    SphereSmoothH,
    SphereSmoothE8h,
    TorusSolid,
    TorusTopVsSmooth,
    TwistExtension,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 6] = [
        ScenarioName::SphereLens,
        ScenarioName::SphereSmoothH,
        ScenarioName::SphereSmoothE8h,
        ScenarioName::TorusSolid,
        ScenarioName::TorusTopVsSmooth,
        ScenarioName::TwistExtension,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::SphereLens => "sphere-lens",
            ScenarioName::SphereSmoothH => "sphere-smooth-h",
            ScenarioName::SphereSmoothE8h => "sphere-smooth-e8h",
            ScenarioName::TorusSolid => "torus-solid",
            ScenarioName::TorusTopVsSmooth => "torus-top-vs-smooth",
            ScenarioName::TwistExtension => "twist-extension",
        }
    }

    /// Parameters the scenario accepts, and which of them are required.
    fn parameters(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            ScenarioName::SphereLens => (&["p", "q"], &["p", "q"]),
            ScenarioName::SphereSmoothH | ScenarioName::SphereSmoothE8h => (&["rho1", "rho2"], &[]),
            ScenarioName::TorusSolid => (&["n", "knot_j", "knot_k"], &["n", "knot_j", "knot_k"]),
            ScenarioName::TorusTopVsSmooth => (&["n", "knot_j", "knot_k"], &[]),
            ScenarioName::TwistExtension => (&["p", "q"], &["p", "q"]),
        }
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, ScenarioError> {
        ScenarioName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ScenarioError::UnknownScenario(s.to_string()))
    }
}

/// Config-file override of a hypothesis flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagOverride {
    pub holds: bool,
    pub provenance: String,
}

/// A scenario and its parameters, as read from a config file or assembled
/// from command-line flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub scenario: ScenarioName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    /// Rohlin invariant of the first boundary summand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho1: Option<u8>,
    /// Rohlin invariant of the second boundary summand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho2: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot_j: Option<KnotSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot_k: Option<KnotSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, FlagOverride>,
}

impl Scenario {
    pub fn new(scenario: ScenarioName) -> Self {
        Scenario {
            scenario,
            p: None,
            q: None,
            n: None,
            rho1: None,
            rho2: None,
            knot_j: None,
            knot_k: None,
            flags: BTreeMap::new(),
        }
    }

    pub fn sphere_lens(p: i64, q: i64) -> Self {
        Scenario {
            p: Some(p),
            q: Some(q),
            ..Scenario::new(ScenarioName::SphereLens)
        }
    }

    pub fn torus_solid(j: KnotSpec, k: KnotSpec, n: i64) -> Self {
        Scenario {
            n: Some(n),
            knot_j: Some(j),
            knot_k: Some(k),
            ..Scenario::new(ScenarioName::TorusSolid)
        }
    }

    pub fn twist_extension(p: i64, q: i64) -> Self {
        Scenario {
            p: Some(p),
            q: Some(q),
            ..Scenario::new(ScenarioName::TwistExtension)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))
    }

    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, present) in [
            ("p", self.p.is_some()),
            ("q", self.q.is_some()),
            ("n", self.n.is_some()),
            ("rho1", self.rho1.is_some()),
            ("rho2", self.rho2.is_some()),
            ("knot_j", self.knot_j.is_some()),
            ("knot_k", self.knot_k.is_some()),
        ] {
            if present {
                out.push(name);
            }
        }
        out
    }

    /// Checks required and accepted parameters and flag keys.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let (allowed, required) = self.scenario.parameters();
        let given = self.given();
        if let Some(extra) = given.iter().find(|g| !allowed.contains(g)) {
            return Err(ScenarioError::UnusedParameter {
                scenario: self.scenario,
                parameter: extra,
            });
        }
        if let Some(missing) = required.iter().find(|r| !given.contains(r)) {
            return Err(ScenarioError::MissingParameter {
                scenario: self.scenario,
                parameter: missing,
            });
        }
        let known = flag_catalog(self.scenario);
        for (key, o) in &self.flags {
            if !known.iter().any(|f| f.key == key) {
                return Err(ScenarioError::UnknownFlag {
                    scenario: self.scenario,
                    key: key.clone(),
                });
            }
            if o.provenance.trim().is_empty() {
                return Err(ScenarioError::MissingProvenance(key.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario `{0}` (known: sphere-lens, sphere-smooth-h, sphere-smooth-e8h, torus-solid, torus-top-vs-smooth, twist-extension)")]
    UnknownScenario(String),
    #[error("unknown output format `{0}` (expected text or json)")]
    UnknownFormat(String),
    #[error("scenario {scenario} requires parameter `{parameter}`")]
    MissingParameter { scenario: ScenarioName, parameter: &'static str },
    #[error("scenario {scenario} does not take parameter `{parameter}`")]
    UnusedParameter { scenario: ScenarioName, parameter: &'static str },
    #[error("invalid parameter `{parameter}`: {message}")]
    InvalidParameter { parameter: &'static str, message: String },
    #[error("scenario {scenario} has no hypothesis flag `{key}`")]
    UnknownFlag { scenario: ScenarioName, key: String },
    #[error("hypothesis flag `{0}` needs a non-empty provenance")]
    MissingProvenance(String),
    #[error("config: {0}")]
    Config(String),
    #[error("knot {role}: {source}")]
    Knot { role: &'static str, source: KnotError },
    #[error("{context}: {source}")]
    Seifert { context: String, source: SeifertError },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Linking(#[from] LinkingError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Front(#[from] FrontError),
    #[error("zero classes {found} do not contain the expected class {expected}")]
    UnexpectedZeroClasses { found: String, expected: String },
}

/// An imported fact the verdict depends on, with where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFlag {
    pub key: String,
    pub statement: String,
    pub holds: bool,
    pub provenance: String,
    /// `default` or `config`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub operation: String,
    pub inputs: Value,
    pub output: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Obstructed { conclusion: String },
    NotObstructed { conclusion: String },
    Extends { conclusion: String },
    /// Established in one category or sense, obstructed in another.
    Mixed { established: String, obstructed: String },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Obstructed { .. } => "Obstructed",
            Verdict::NotObstructed { .. } => "NotObstructed",
            Verdict::Extends { .. } => "Extends",
            Verdict::Mixed { .. } => "Mixed",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Obstructed { conclusion }
            | Verdict::NotObstructed { conclusion }
            | Verdict::Extends { conclusion } => write!(f, "{}: {conclusion}", self.kind()),
            Verdict::Mixed { established, obstructed } => {
                write!(f, "Mixed: yes, {established}; no, {obstructed}")
            }
            Verdict::Inconclusive { reason } => write!(f, "Inconclusive: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: String,
    pub scenario: Scenario,
    pub trace: Vec<TraceStep>,
    pub hypotheses: Vec<HypothesisFlag>,
    pub verdict: Verdict,
    /// Trace steps (`step:N`) and hypothesis flags (`flag:KEY`) the verdict
    /// rests on.
    pub justification: Vec<String>,
    pub citations: Vec<String>,
}

impl Report {
    pub fn step(&self, operation: &str) -> Option<&TraceStep> {
        self.trace.iter().find(|s| s.operation == operation)
    }

    pub fn steps<'a>(&'a self, operation: &'a str) -> impl Iterator<Item = &'a TraceStep> + 'a {
        self.trace.iter().filter(move |s| s.operation == operation)
    }
}

struct FlagSpec {
    key: &'static str,
    statement: &'static str,
    provenance: &'static str,
}

const fn flag(key: &'static str, statement: &'static str, provenance: &'static str) -> FlagSpec {
    FlagSpec {
        key,
        statement,
        provenance,
    }
}

const LENS_FLAGS: &[FlagSpec] = &[flag(
    "ball-splits-w",
    "a topological ball bounded by S splits W as W1 # W2 with each Wi simply connected, H2(Wi) = Z and boundary -L(p,q), L(p,q)",
    "boundary-connected-sum decomposition along a ball; long exact sequence of (Wi, boundary) with Poincare-Lefschetz duality",
)];

const SPHERE_SMOOTH_FLAGS: &[FlagSpec] = &[
    flag(
        "spin-homology-sphere-sides",
        "W is smooth, spin and simply connected and both sides Y1, Y2 of S are integral homology spheres",
        "construction by surgery on a normal generator of the Poincare sphere group in P x I (Scharlemann)",
    ),
    flag(
        "topological-ball",
        "a separating sphere with homology-sphere sides in the boundary of a simply connected 4-manifold bounds a topological ball",
        "Freedman-Quinn: topological surgery; every homology 3-sphere bounds a contractible topological 4-manifold",
    ),
    flag(
        "rohlin-values",
        "the Rohlin invariants of Y1 and Y2 are the values given by rho1 and rho2",
        "Rohlin's theorem; the Poincare sphere bounds the E8 plumbing, so rho(P) = 1, and rho is additive under connected sum",
    ),
];

const SPHERE_E8H_FLAGS: &[FlagSpec] = &[
    flag(
        "y1-no-e8-filling",
        "Y1 bounds no smooth 4-manifold with intersection form E8",
        "Donaldson's diagonalization theorem (gluing to the E8 plumbing would give a closed definite form E8 + E8)",
    ),
    flag(
        "y2-no-acyclic-filling",
        "Y2 = P # P bounds no smooth acyclic 4-manifold",
        "Fintushel-Stern: pseudofree orbifolds",
    ),
];

const TORUS_SOLID_FLAGS: &[FlagSpec] = &[flag(
    "solid-torus-needs-slice-curve",
    "a solid torus bounded by T has a meridian disk whose boundary is a primitive class on T with vanishing self-linking, slice in W, and algebraically concordant to the knot listed for its class",
    "Hoste: linking numbers in surgered 3-manifolds; Levine: algebraic concordance; Seifert surfaces built from parallel copies avoiding the surgery link",
)];

const TOP_VS_SMOOTH_FLAGS: &[FlagSpec] = &[
    flag(
        "torus-separating",
        "T is separating in Y",
        "T is the boundary of a regular neighbourhood of the framed component in the Kirby diagram",
    ),
    flag(
        "freedman-delta-one",
        "a knot in S^3 with Alexander polynomial one is topologically slice, with a slice disk surviving in W",
        "Freedman-Quinn 11.7B",
    ),
    flag(
        "surgered-irreducible",
        "the surgered manifold Y_e(alpha) is irreducible (0-surgery on a nontrivial knot)",
        "Gabai: foliations and the topology of 3-manifolds III (0-surgery on a nontrivial knot is irreducible)",
    ),
    flag(
        "slice-curve-gives-solid-torus",
        "if a primitive curve on a separating T is slice in W with the surface framing and the surgered manifold is irreducible, T bounds a solid torus",
        "ambient 2-handle plus 3-handle attachment; Alexander's theorem on irreducible 3-manifolds",
    ),
    flag(
        "stein-diagram",
        "the Legendrian fronts of the fixture are a handle diagram of W after trading dotted circles for 1-handles",
        "Gompf: handlebody construction of Stein surfaces; Akbulut cork diagrams",
    ),
    flag(
        "slice-bennequin",
        "in a Stein domain a Legendrian knot bounds no smooth surface of genus below the slice-Bennequin bound",
        "Akbulut-Matveyev; Lisca-Matic adjunction inequality for Stein domains",
    ),
    flag(
        "smooth-torus-needs-slice-curve",
        "a smooth solid torus bounded by T needs alpha or beta to be smoothly slice in W",
        "Hoste: linking numbers in surgered 3-manifolds; the zero classes of the self-linking form are alpha and beta",
    ),
];

const TWIST_FLAGS: &[FlagSpec] = &[
    flag(
        "alpha-twist-extends",
        "the Dehn twist along alpha extends over W",
        "Gompf: Dehn twists along the meridian of a dotted circle extend across the 1-handle",
    ),
    flag(
        "fibre-twist-extends",
        "the Dehn twist along a regular fibre of the torus-knot exterior extends over W",
        "Seifert fibration of the torus-knot exterior: the circle action isotopes the fibre twist to the identity",
    ),
    flag(
        "solid-torus-needs-slice-curve",
        "a solid torus bounded by T has a meridian disk whose boundary is a primitive class on T with vanishing self-linking, slice in W",
        "Hoste: linking numbers in surgered 3-manifolds; Levine: algebraic concordance",
    ),
];

fn flag_catalog(name: ScenarioName) -> Vec<&'static FlagSpec> {
    match name {
        ScenarioName::SphereLens => LENS_FLAGS.iter().collect(),
        ScenarioName::SphereSmoothH => SPHERE_SMOOTH_FLAGS.iter().collect(),
        ScenarioName::SphereSmoothE8h => SPHERE_SMOOTH_FLAGS.iter().chain(SPHERE_E8H_FLAGS).collect(),
        ScenarioName::TorusSolid => TORUS_SOLID_FLAGS.iter().collect(),
        ScenarioName::TorusTopVsSmooth => TOP_VS_SMOOTH_FLAGS.iter().collect(),
        ScenarioName::TwistExtension => TWIST_FLAGS.iter().collect(),
    }
}

fn citations(name: ScenarioName) -> Vec<String> {
    let list: &[&str] = match name {
        ScenarioName::SphereLens => &["Saeki: lens spaces bounding simply connected 4-manifolds with b2 = 1"],
        ScenarioName::SphereSmoothH => &[
            "Freedman-Quinn: topology of 4-manifolds",
            "Milnor-Husemoller: symmetric bilinear forms",
            "Rohlin: signature of smooth spin 4-manifolds is divisible by 16",
        ],
        ScenarioName::SphereSmoothE8h => &[
            "Donaldson: orientability of moduli spaces and definite intersection forms",
            "Fintushel-Stern: pseudofree orbifolds",
            "Freedman-Quinn: topology of 4-manifolds",
            "Milnor-Husemoller: symmetric bilinear forms",
            "Rohlin: signature of smooth spin 4-manifolds is divisible by 16",
        ],
        ScenarioName::TorusSolid => &[
            "Fox-Milnor: Alexander polynomials of slice knots",
            "Hoste: linking numbers in surgered 3-manifolds",
            "Levine: knot cobordism groups in codimension two",
            "Trotter/Murasugi: the signature of a slice knot vanishes",
        ],
        ScenarioName::TorusTopVsSmooth => &[
            "Akbulut-Matveyev: exotic structures and adjunction inequality",
            "Eliashberg: topological characterization of Stein manifolds",
            "Freedman-Quinn 11.7B",
            "Gabai: foliations and the topology of 3-manifolds III",
            "Gompf: handlebody construction of Stein surfaces",
            "Hoste: linking numbers in surgered 3-manifolds",
            "Lisca-Matic: tight contact structures and Seiberg-Witten invariants",
        ],
        ScenarioName::TwistExtension => &[
            "Fox-Milnor: Alexander polynomials of slice knots",
            "Gompf: infinite order corks",
            "Hoste: linking numbers in surgered 3-manifolds",
            "Trotter/Murasugi: the signature of a slice knot vanishes",
        ],
    };
    list.iter().map(|s| s.to_string()).collect()
}

struct Run {
    trace: Vec<TraceStep>,
    flags: Vec<HypothesisFlag>,
}

impl Run {
    fn new(s: &Scenario) -> Self {
        let flags = flag_catalog(s.scenario)
            .into_iter()
            .map(|spec| match s.flags.get(spec.key) {
                Some(o) => HypothesisFlag {
                    key: spec.key.to_string(),
                    statement: spec.statement.to_string(),
                    holds: o.holds,
                    provenance: o.provenance.clone(),
                    source: "config".into(),
                },
                None => HypothesisFlag {
                    key: spec.key.to_string(),
                    statement: spec.statement.to_string(),
                    holds: true,
                    provenance: spec.provenance.to_string(),
                    source: "default".into(),
                },
            })
            .collect();
        Run { trace: Vec::new(), flags }
    }

    fn step(&mut self, operation: &str, inputs: Value, output: Value) -> String {
        let step = self.trace.len() + 1;
        self.trace.push(TraceStep {
            step,
            operation: operation.to_string(),
            inputs,
            output,
        });
        format!("step:{step}")
    }

    fn holds(&self, key: &str) -> bool {
        self.flags.iter().any(|f| f.key == key && f.holds)
    }

    fn flag_ref(key: &str) -> String {
        format!("flag:{key}")
    }
}

fn seifert_json(v: &SeifertMatrix) -> Value {
    match v.to_i64_rows() {
        Some(rows) => json!(rows),
        None => json!(v.to_string()),
    }
}

fn slice_json(v: &SliceVerdict) -> Value {
    match v {
        SliceVerdict::ObstructedBySignature { signature } => {
            json!({"status": "obstructed", "by": "signature", "signature": signature})
        }
        SliceVerdict::ObstructedByFoxMilnor { witness } => {
            json!({"status": "obstructed", "by": "fox-milnor", "witness": witness.to_string()})
        }
        SliceVerdict::Unknown { reason } => json!({"status": "unknown", "reason": reason}),
    }
}

fn class_json(c: &(BigInt, BigInt)) -> Value {
    json!([c.0.to_string(), c.1.to_string()])
}

fn resolve_knot(run: &mut Run, role: &'static str, spec: &KnotSpec) -> Result<Knot, ScenarioError> {
    let knot = spec.resolve().map_err(|source| ScenarioError::Knot { role, source })?;
    run.step(
        "resolve_knot",
        json!({"role": role, "spec": spec}),
        json!({"label": knot.label, "seifert": seifert_json(&knot.seifert)}),
    );
    Ok(knot)
}

fn seifert_err(context: impl Into<String>) -> impl FnOnce(SeifertError) -> ScenarioError {
    let context = context.into();
    move |source| ScenarioError::Seifert { context, source }
}

/// Runs a scenario. Reports depend only on the scenario value.
pub fn run_scenario(s: &Scenario) -> Result<Report, ScenarioError> {
    s.validate()?;
    let mut echo = s.clone();
    let mut run = Run::new(s);
    let (verdict, mut justification) = match s.scenario {
        ScenarioName::SphereLens => sphere_lens(&mut run, s.p.unwrap_or_default(), s.q.unwrap_or_default())?,
        ScenarioName::SphereSmoothH => {
            echo.rho1 = Some(s.rho1.unwrap_or(1));
            sphere_smooth(&mut run, EvenFormClass::H, echo.rho1, echo.rho2)?
        }
        ScenarioName::SphereSmoothE8h => {
            echo.rho1 = Some(s.rho1.unwrap_or(1));
            echo.rho2 = Some(s.rho2.unwrap_or(0));
            sphere_smooth(&mut run, EvenFormClass::E8_PLUS_H, echo.rho1, echo.rho2)?
        }
        ScenarioName::TorusSolid => {
            let j = resolve_knot(&mut run, "J", s.knot_j.as_ref().expect("validated"))?;
            let k = resolve_knot(&mut run, "K", s.knot_k.as_ref().expect("validated"))?;
            let outcome = torus_solid_pipeline(&mut run, &j, &k, s.n.expect("validated"))?;
            torus_solid_verdict(&run, &outcome)
        }
        ScenarioName::TorusTopVsSmooth => {
            echo.n = Some(s.n.unwrap_or(0));
            echo.knot_j = Some(s.knot_j.clone().unwrap_or_else(|| KnotSpec::named("left-trefoil")));
            echo.knot_k = Some(s.knot_k.clone().unwrap_or_else(|| KnotSpec::named("positive-whitehead-double")));
            torus_top_vs_smooth(&mut run, &echo)?
        }
        ScenarioName::TwistExtension => twist_extension(&mut run, s.p.unwrap_or_default(), s.q.unwrap_or_default())?,
    };
    let mut seen = std::collections::BTreeSet::new();
    justification.retain(|j| seen.insert(j.clone()));
    Ok(Report {
        schema_version: SCHEMA_VERSION.to_string(),
        scenario: echo,
        trace: run.trace,
        hypotheses: run.flags,
        verdict,
        justification,
        citations: citations(s.scenario),
    })
}

fn sphere_lens(run: &mut Run, p: i64, q: i64) -> Result<(Verdict, Vec<String>), ScenarioError> {
    let pu = u64::try_from(p).map_err(|_| ScenarioError::InvalidParameter {
        parameter: "p",
        message: format!("p must be at least 2, got {p}"),
    })?;
    let bounds = lens_qr_bounding(pu, q)?;
    let squares = square_units(pu);
    let s1 = run.step("square_units", json!({"p": p}), json!({"squares": squares}));
    let r = q.rem_euclid(p);
    let s2 = run.step(
        "lens_qr_bounding",
        json!({"p": p, "q": q}),
        json!({"q_mod_p": r, "minus_q_mod_p": p - r, "bounds_b2_one": bounds}),
    );
    let set = format!(
        "{{{}}}",
        squares.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    );
    if bounds {
        let conclusion = format!(
            "L({p},{q}) bounds a simply connected manifold with b2 = 1 (q or -q lies in the squares {set} mod {p}); the residue obstruction is silent"
        );
        return Ok((Verdict::NotObstructed { conclusion }, vec![s1, s2]));
    }
    if !run.holds("ball-splits-w") {
        return Ok((
            Verdict::Inconclusive {
                reason: "the splitting hypothesis ball-splits-w is switched off".into(),
            },
            vec![s1, s2, Run::flag_ref("ball-splits-w")],
        ));
    }
    let conclusion = format!(
        "S bounds no embedded topological ball in W: neither {r} nor {} is in the squares {set} mod {p}",
        p - r
    );
    Ok((Verdict::Obstructed { conclusion }, vec![s1, s2, Run::flag_ref("ball-splits-w")]))
}

fn sphere_smooth(
    run: &mut Run,
    total: EvenFormClass,
    rho1: Option<u8>,
    rho2: Option<u8>,
) -> Result<(Verdict, Vec<String>), ScenarioError> {
    let mut just = Vec::new();
    let c1 = rho1.map(rohlin_constraint).transpose()?;
    let c2 = rho2.map(rohlin_constraint).transpose()?;
    for (side, rho, c) in [("Y1", rho1, c1), ("Y2", rho2, c2)] {
        if let (Some(rho), Some(c)) = (rho, c) {
            just.push(run.step("rohlin_constraint", json!({"side": side, "rho": rho}), json!(c.to_string())));
        }
    }
    let splittings = enumerate_even_splittings(total, c1, c2);
    let listed: Vec<Value> = splittings
        .iter()
        .map(|(a, b)| json!([a.to_string(), b.to_string()]))
        .collect();
    just.push(run.step(
        "enumerate_even_splittings",
        json!({
            "total": total.to_string(),
            "first": c1.map(|c| c.to_string()),
            "second": c2.map(|c| c.to_string()),
        }),
        json!({"splittings": listed}),
    ));
    for key in ["spin-homology-sphere-sides", "rohlin-values"] {
        just.push(Run::flag_ref(key));
    }

    let mut remaining = Vec::new();
    for (a, b) in &splittings {
        let excluded_by = if *a == EvenFormClass::E8 && run.flags.iter().any(|f| f.key == "y1-no-e8-filling") {
            Some("y1-no-e8-filling")
        } else if *b == EvenFormClass::ZERO && run.flags.iter().any(|f| f.key == "y2-no-acyclic-filling") {
            Some("y2-no-acyclic-filling")
        } else {
            None
        };
        let excluded = excluded_by.filter(|k| run.holds(k));
        just.push(run.step(
            "exclude_splitting",
            json!({"first": a.to_string(), "second": b.to_string()}),
            json!({"excluded": excluded.is_some(), "by": excluded_by.map(|k| format!("flag:{k}"))}),
        ));
        match excluded {
            Some(k) => just.push(Run::flag_ref(k)),
            None => remaining.push(format!("{a} + {b}")),
        }
    }

    if !run.holds("spin-homology-sphere-sides") || !run.holds("rohlin-values") {
        return Ok((
            Verdict::Inconclusive {
                reason: "the spin/homology-sphere setup or the Rohlin values are switched off".into(),
            },
            just,
        ));
    }
    if !remaining.is_empty() {
        return Ok((
            Verdict::Inconclusive {
                reason: format!("splittings not excluded: {}", remaining.join("; ")),
            },
            just,
        ));
    }
    let obstructed = if splittings.is_empty() {
        format!("S bounds no smooth ball in W: {total} has no even splitting meeting the Rohlin constraints")
    } else {
        format!("S bounds no smooth ball in W: every even splitting of {total} is excluded")
    };
    if run.holds("topological-ball") {
        just.push(Run::flag_ref("topological-ball"));
        Ok((
            Verdict::Mixed {
                established: "S bounds a topologically embedded ball in W".into(),
                obstructed,
            },
            just,
        ))
    } else {
        Ok((Verdict::Obstructed { conclusion: obstructed }, just))
    }
}

/// Slice verdicts of the two curve classes with vanishing self-linking.
struct TorusSolidOutcome {
    beta: SliceVerdict,
    beta_label: String,
    alpha: SliceVerdict,
    alpha_label: String,
    justification: Vec<String>,
}

fn torus_solid_pipeline(run: &mut Run, j: &Knot, k: &Knot, n: i64) -> Result<TorusSolidOutcome, ScenarioError> {
    let mut just = Vec::new();
    let pres = dotted_pair_presentation(n);
    let b = pres.boundary_linking_matrix();
    just.push(run.step(
        "boundary_linking_matrix",
        json!({"presentation": pres.to_text()}),
        json!(b.to_i64_rows()),
    ));
    let h1 = first_homology(&b);
    run.step(
        "first_homology",
        json!({"matrix": b.to_i64_rows()}),
        json!({"group": h1.describe(), "homology_sphere": h1.is_homology_sphere}),
    );
    let basis = pres.torus_basis("alpha", "beta")?;
    let form = self_linking_form(&b, &basis)?;
    just.push(run.step(
        "self_linking_form",
        json!({"alpha": "alpha", "beta": "beta"}),
        json!({"a": form.a.to_string(), "b": form.b.to_string(), "c": form.c.to_string()}),
    ));
    let zeros = zero_classes(&form);
    let classes: Vec<(BigInt, BigInt)> = zeros.classes().map(|c| c.to_vec()).unwrap_or_default();
    just.push(run.step(
        "zero_classes",
        json!({"form": form.to_string()}),
        json!(classes.iter().map(class_json).collect::<Vec<_>>()),
    ));
    let beta_class = canonical_class(&BigInt::from(0), &BigInt::from(1));
    let alpha_class = canonical_class(&BigInt::from(1), &BigInt::from(n));
    for expected in [&beta_class, &alpha_class] {
        if !classes.contains(expected) {
            return Err(ScenarioError::UnexpectedZeroClasses {
                found: format!("{:?}", classes),
                expected: format!("({}, {})", expected.0, expected.1),
            });
        }
    }

    let minus_j = concordance_inverse(&j.seifert);
    let beta_label = format!("-({})", j.label);
    just.push(run.step(
        "concordance_inverse",
        json!({"knot": j.label}),
        json!({"label": beta_label, "seifert": seifert_json(&minus_j)}),
    ));
    let beta = algebraic_slice_verdict(&minus_j);
    just.push(run.step(
        "algebraic_slice_verdict",
        json!({"class": class_json(&beta_class), "knot": beta_label}),
        slice_json(&beta),
    ));

    let (alpha_seifert, alpha_label) = if n == 0 {
        (k.seifert.clone(), k.label.clone())
    } else {
        let cable = parallel_cable(&j.seifert, n).map_err(seifert_err(format!("cable of {}", j.label)))?;
        let cable_label = format!("({})_{{{n},1}}", j.label);
        just.push(run.step(
            "parallel_cable",
            json!({"knot": j.label, "n": n}),
            json!({"label": cable_label, "size": cable.size()}),
        ));
        let sum = connected_sum(&k.seifert, &cable);
        let label = format!("{} # {cable_label}", k.label);
        just.push(run.step(
            "connected_sum",
            json!({"left": k.label, "right": cable_label}),
            json!({"label": label, "size": sum.size()}),
        ));
        (sum, label)
    };
    let alpha = algebraic_slice_verdict(&alpha_seifert);
    just.push(run.step(
        "algebraic_slice_verdict",
        json!({"class": class_json(&alpha_class), "knot": alpha_label}),
        slice_json(&alpha),
    ));
    Ok(TorusSolidOutcome {
        beta,
        beta_label,
        alpha,
        alpha_label,
        justification: just,
    })
}

fn torus_solid_verdict(run: &Run, o: &TorusSolidOutcome) -> (Verdict, Vec<String>) {
    let mut just = o.justification.clone();
    just.push(Run::flag_ref("solid-torus-needs-slice-curve"));
    let open: Vec<String> = [(&o.beta, &o.beta_label), (&o.alpha, &o.alpha_label)]
        .into_iter()
        .filter(|(v, _)| !v.is_obstructed())
        .map(|(v, label)| format!("{label}: {v}"))
        .collect();
    let verdict = if !open.is_empty() {
        Verdict::Inconclusive {
            reason: format!("no obstruction for {}", open.join("; ")),
        }
    } else if !run.holds("solid-torus-needs-slice-curve") {
        Verdict::Inconclusive {
            reason: "both curves are not algebraically slice, but the hypothesis solid-torus-needs-slice-curve is switched off".into(),
        }
    } else {
        Verdict::Obstructed {
            conclusion: format!(
                "T bounds no embedded solid torus in W: neither {} nor {} is algebraically slice",
                o.beta_label, o.alpha_label
            ),
        }
    };
    (verdict, just)
}

fn torus_top_vs_smooth(run: &mut Run, s: &Scenario) -> Result<(Verdict, Vec<String>), ScenarioError> {
    let n = s.n.unwrap_or(0);
    if n != 0 {
        return Err(ScenarioError::InvalidParameter {
            parameter: "n",
            message: format!("the Stein fixture describes n = 0, got {n}"),
        });
    }
    let j = resolve_knot(run, "J", s.knot_j.as_ref().expect("defaulted"))?;
    let k = resolve_knot(run, "K", s.knot_k.as_ref().expect("defaulted"))?;

    // the same linking computation as torus-solid identifies alpha and beta
    let pres = dotted_pair_presentation(n);
    let b = pres.boundary_linking_matrix();
    run.step(
        "boundary_linking_matrix",
        json!({"presentation": pres.to_text()}),
        json!(b.to_i64_rows()),
    );
    let basis = pres.torus_basis("alpha", "beta")?;
    let form = self_linking_form(&b, &basis)?;
    run.step(
        "self_linking_form",
        json!({"alpha": "alpha", "beta": "beta"}),
        json!({"a": form.a.to_string(), "b": form.b.to_string(), "c": form.c.to_string()}),
    );
    let zeros = zero_classes(&form);
    let classes: Vec<(BigInt, BigInt)> = zeros.classes().map(|c| c.to_vec()).unwrap_or_default();
    let alpha_class = canonical_class(&BigInt::from(1), &BigInt::from(0));
    let alpha_nonzero = classes.contains(&alpha_class);
    let s_zero = run.step(
        "zero_classes",
        json!({"form": form.to_string()}),
        json!({"classes": classes.iter().map(class_json).collect::<Vec<_>>(), "alpha_is_nonzero_zero_class": alpha_nonzero}),
    );

    // topological side
    let delta = alexander_polynomial(&k.seifert);
    let delta_one = delta.is_unit();
    let s_delta = run.step(
        "alexander_polynomial",
        json!({"curve": "alpha", "knot": k.label}),
        json!({"delta": delta.to_string(), "is_one": delta_one}),
    );
    let top_flags = [
        "torus-separating",
        "freedman-delta-one",
        "surgered-irreducible",
        "slice-curve-gives-solid-torus",
    ];
    let topological = alpha_nonzero && delta_one && top_flags.iter().all(|f| run.holds(f));
    let mut top_just = vec![s_zero.clone(), s_delta];
    top_just.extend(top_flags.iter().map(|f| Run::flag_ref(f)));

    // smooth side
    let fixture = stein_fixture();
    let handles = fixture.handle_list()?;
    let stein = stein_condition(&handles);
    let s_stein = run.step(
        "stein_condition",
        json!({"handles": fixture.handles.iter().map(|h| json!({"front": h.front, "framing": h.framing})).collect::<Vec<_>>()}),
        json!(stein),
    );
    let alpha_front = fixture.front("alpha")?;
    let (t, r) = (tb(&alpha_front), rot(&alpha_front));
    let s_front = run.step(
        "legendrian_invariants",
        json!({"front": "alpha", "writhe": alpha_front.writhe(), "down_cusps": alpha_front.down_cusps(), "up_cusps": alpha_front.up_cusps()}),
        json!({"tb": t, "rot": r}),
    );
    let genus = slice_bennequin_genus_bound(t, r);
    let s_genus = run.step(
        "slice_bennequin_genus_bound",
        json!({"tb": t, "rot": r}),
        json!({"genus_at_least": genus}),
    );
    let minus_j = concordance_inverse(&j.seifert);
    let sigma = signature(&minus_j);
    let s_sigma = run.step(
        "signature",
        json!({"knot": format!("-({})", j.label)}),
        json!({"signature": sigma}),
    );
    let smooth_flags = ["stein-diagram", "slice-bennequin", "smooth-torus-needs-slice-curve"];
    let smooth_obstructed = stein.holds && genus > 0 && sigma != 0 && smooth_flags.iter().all(|f| run.holds(f));
    let mut smooth_just = vec![s_zero, s_stein, s_front, s_genus, s_sigma];
    smooth_just.extend(smooth_flags.iter().map(|f| Run::flag_ref(f)));

    let established = "T bounds a topologically embedded solid torus in W".to_string();
    let obstructed = format!(
        "T bounds no smoothly embedded solid torus in W: alpha has slice genus at least {genus} and -J has signature {sigma}"
    );
    Ok(match (topological, smooth_obstructed) {
        (true, true) => {
            let mut just = top_just;
            just.extend(smooth_just);
            (Verdict::Mixed { established, obstructed }, just)
        }
        (true, false) => (Verdict::Extends { conclusion: established }, top_just),
        (false, true) => (Verdict::Obstructed { conclusion: obstructed }, smooth_just),
        (false, false) => {
            let mut just = top_just;
            just.extend(smooth_just);
            (
                Verdict::Inconclusive {
                    reason: "neither the topological checklist nor the smooth obstruction is complete".into(),
                },
                just,
            )
        }
    })
}

fn twist_extension(run: &mut Run, p: i64, q: i64) -> Result<(Verdict, Vec<String>), ScenarioError> {
    let orbit = seifert_orbit_class(p, q)?;
    let s1 = run.step("seifert_orbit_class", json!({"p": p, "q": q}), json!(orbit.to_string()));
    let orbit_ab = to_alpha_beta(&orbit)?;
    let s2 = run.step("to_alpha_beta", json!(orbit.to_string()), json!(orbit_ab.to_string()));
    let alpha = TwistClass::alpha_beta(1, 0);
    let mut extending = Vec::new();
    if run.holds("alpha-twist-extends") {
        extending.push(alpha);
    }
    if run.holds("fibre-twist-extends") {
        extending.push(orbit_ab);
    }
    let sub = extension_subgroup(&extending)?;
    let s3 = run.step(
        "extension_subgroup",
        json!({"generators": extending.iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
        json!(sub),
    );

    let j = resolve_knot(run, "J", &KnotSpec::torus(p, q))?;
    let k = resolve_knot(run, "K", &KnotSpec::named("unknot"))?;
    let outcome = torus_solid_pipeline(run, &j, &k, -1)?;
    let (companion, mut companion_just) = torus_solid_verdict(run, &outcome);
    let s4 = run.step(
        "companion_torus_solid",
        json!({"knot_j": j.label, "knot_k": k.label, "n": -1}),
        json!({"verdict": companion.kind(), "detail": companion.to_string()}),
    );

    let mut just = vec![s1, s2, s3, Run::flag_ref("alpha-twist-extends"), Run::flag_ref("fibre-twist-extends")];
    let all_extend = sub.is_everything();
    let established = "every Dehn twist along T extends over W (extension subgroup has index 1 in Z^2)".to_string();
    Ok(match (all_extend, matches!(companion, Verdict::Obstructed { .. })) {
        (true, true) => {
            just.append(&mut companion_just);
            just.push(s4);
            (
                Verdict::Mixed {
                    established,
                    obstructed: format!("T bounds no smooth solid torus in W ({companion})"),
                },
                just,
            )
        }
        (true, false) => (Verdict::Extends { conclusion: established }, just),
        (false, _) => {
            just.push(s4);
            (
                Verdict::Inconclusive {
                    reason: format!(
                        "known extending twists generate a subgroup of index {}",
                        sub.index.map_or("infinity".to_string(), |i| i.to_string())
                    ),
                },
                just,
            )
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = ScenarioError;

    fn from_str(s: &str) -> Result<Self, ScenarioError> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(ScenarioError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render_text(r),
    }
}

fn render_text(r: &Report) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "dehnkit report ({})", r.schema_version);
    let params = serde_json::to_value(&r.scenario).expect("scenario serializes");
    let _ = writeln!(out, "scenario: {}", r.scenario.scenario);
    if let Value::Object(map) = params {
        for (k, v) in map.iter().filter(|(k, _)| k.as_str() != "scenario") {
            let _ = writeln!(out, "  {k} = {v}");
        }
    }
    let _ = writeln!(out, "\ncomputed steps:");
    for s in &r.trace {
        let _ = writeln!(out, "  [{}] {} {}", s.step, s.operation, s.inputs);
        let _ = writeln!(out, "      => {}", s.output);
    }
    let _ = writeln!(out, "\nhypotheses (imported, not computed):");
    if r.hypotheses.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for f in &r.hypotheses {
        let state = if f.holds { "assumed" } else { "OFF" };
        let _ = writeln!(out, "  [{state}] {}: {}", f.key, f.statement);
        let _ = writeln!(out, "      source: {} ({})", f.provenance, f.source);
    }
    let _ = writeln!(out, "\nverdict: {}", r.verdict);
    let _ = writeln!(out, "justified by: {}", r.justification.join(", "));
    let _ = writeln!(out, "\ncitations:");
    for c in &r.citations {
        let _ = writeln!(out, "  - {c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_names_round_trip() {
        for n in ScenarioName::ALL {
            assert_eq!(n.as_str().parse::<ScenarioName>().unwrap(), n);
            assert_eq!(serde_json::to_value(n).unwrap(), json!(n.as_str()));
        }
        assert!("sphere".parse::<ScenarioName>().is_err());
    }

    #[test]
    fn parameter_checks() {
        let mut s = Scenario::new(ScenarioName::SphereLens);
        s.p = Some(5);
        assert!(matches!(run_scenario(&s), Err(ScenarioError::MissingParameter { parameter: "q", .. })));
        s.q = Some(2);
        s.n = Some(1);
        assert!(matches!(run_scenario(&s), Err(ScenarioError::UnusedParameter { parameter: "n", .. })));
        assert!(matches!(run_scenario(&Scenario::sphere_lens(6, 3)), Err(ScenarioError::Form(_))));
        let mut s = Scenario::sphere_lens(5, 2);
        s.flags.insert(
            "ball-splits-w".into(),
            FlagOverride {
                holds: true,
                provenance: " ".into(),
            },
        );
        assert!(matches!(run_scenario(&s), Err(ScenarioError::MissingProvenance(_))));
        s.flags.clear();
        s.flags.insert(
            "nonsense".into(),
            FlagOverride {
                holds: true,
                provenance: "x".into(),
            },
        );
        assert!(matches!(run_scenario(&s), Err(ScenarioError::UnknownFlag { .. })));
    }

    #[test]
    fn config_rejects_unknown_fields() {
        assert!(Scenario::from_json(r#"{"scenario": "sphere-lens", "p": 5, "q": 2}"#).is_ok());
        assert!(Scenario::from_json(r#"{"scenario": "sphere-lens", "p": 5, "q": 2, "r": 1}"#).is_err());
        assert!(Scenario::from_json(r#"{"scenario": "sphere-ball"}"#).is_err());
        let s = Scenario::from_json(
            r#"{"scenario": "torus-solid", "n": 1, "knot_j": {"torus": [2, 3]}, "knot_k": {"name": "unknot"}}"#,
        )
        .unwrap();
        assert_eq!(s.knot_j, Some(KnotSpec::torus(2, 3)));
    }

    #[test]
    fn lens_verdicts() {
        let r = run_scenario(&Scenario::sphere_lens(5, 2)).unwrap();
        assert_eq!(r.verdict.kind(), "Obstructed");
        assert_eq!(r.step("square_units").unwrap().output, json!({"squares": [1, 4]}));
        assert!(render(&r, Format::Text).contains("{1,4}"));
        assert_eq!(run_scenario(&Scenario::sphere_lens(5, 1)).unwrap().verdict.kind(), "NotObstructed");
    }

    #[test]
    fn switching_off_a_flag_weakens_the_verdict() {
        let mut s = Scenario::new(ScenarioName::SphereSmoothE8h);
        assert_eq!(run_scenario(&s).unwrap().verdict.kind(), "Mixed");
        s.flags.insert(
            "y2-no-acyclic-filling".into(),
            FlagOverride {
                holds: false,
                provenance: "testing".into(),
            },
        );
        let r = run_scenario(&s).unwrap();
        assert_eq!(r.verdict.kind(), "Inconclusive");
        assert!(r.hypotheses.iter().any(|f| f.source == "config" && !f.holds));
    }

    #[test]
    fn sphere_smooth_cases() {
        let h = run_scenario(&Scenario::new(ScenarioName::SphereSmoothH)).unwrap();
        assert_eq!(h.step("enumerate_even_splittings").unwrap().output, json!({"splittings": []}));
        assert_eq!(h.verdict.kind(), "Mixed");
        let e = run_scenario(&Scenario::new(ScenarioName::SphereSmoothE8h)).unwrap();
        assert_eq!(
            e.step("enumerate_even_splittings").unwrap().output,
            json!({"splittings": [["E8", "H"], ["E8+H", "0"]]})
        );
        assert_eq!(e.steps("exclude_splitting").count(), 2);
        let mut s = Scenario::new(ScenarioName::SphereSmoothH);
        s.rho1 = Some(0);
        assert_eq!(run_scenario(&s).unwrap().verdict.kind(), "Inconclusive");
    }

    #[test]
    fn torus_solid_unknot_k_at_zero_is_inconclusive() {
        let s = Scenario::torus_solid(KnotSpec::named("left-trefoil"), KnotSpec::named("unknot"), 0);
        let r = run_scenario(&s).unwrap();
        assert_eq!(r.verdict.kind(), "Inconclusive");
        let branches: Vec<_> = r.steps("algebraic_slice_verdict").collect();
        assert_eq!(branches[0].output["status"], "obstructed");
        assert_eq!(branches[1].output["status"], "unknown");
    }

    #[test]
    fn top_vs_smooth_defaults() {
        let r = run_scenario(&Scenario::new(ScenarioName::TorusTopVsSmooth)).unwrap();
        assert_eq!(r.verdict.kind(), "Mixed");
        assert_eq!(r.step("alexander_polynomial").unwrap().output["is_one"], json!(true));
        assert_eq!(r.step("slice_bennequin_genus_bound").unwrap().output, json!({"genus_at_least": 1}));
        let mut s = Scenario::new(ScenarioName::TorusTopVsSmooth);
        s.flags.insert(
            "surgered-irreducible".into(),
            FlagOverride {
                holds: false,
                provenance: "testing".into(),
            },
        );
        assert_eq!(run_scenario(&s).unwrap().verdict.kind(), "Obstructed");
        s.n = Some(1);
        assert!(matches!(run_scenario(&s), Err(ScenarioError::InvalidParameter { .. })));
    }

    #[test]
    fn every_verdict_is_justified() {
        let scenarios = [
            Scenario::sphere_lens(5, 2),
            Scenario::sphere_lens(7, 3),
            Scenario::new(ScenarioName::SphereSmoothH),
            Scenario::new(ScenarioName::SphereSmoothE8h),
            Scenario::torus_solid(KnotSpec::named("trefoil"), KnotSpec::named("trefoil"), 2),
            Scenario::new(ScenarioName::TorusTopVsSmooth),
            Scenario::twist_extension(2, 5),
        ];
        for s in &scenarios {
            let r = run_scenario(s).unwrap();
            assert!(!r.justification.is_empty(), "{}", s.scenario);
            for j in &r.justification {
                if let Some(n) = j.strip_prefix("step:") {
                    let n: usize = n.parse().unwrap();
                    assert!(n >= 1 && n <= r.trace.len());
                } else {
                    let key = j.strip_prefix("flag:").unwrap();
                    assert!(r.hypotheses.iter().any(|f| f.key == key));
                }
            }
            assert!(r.hypotheses.iter().all(|f| !f.provenance.is_empty()));
        }
    }

    #[test]
    fn render_is_deterministic() {
        let s = Scenario::twist_extension(2, 3);
        for f in [Format::Text, Format::Json] {
            assert_eq!(render(&run_scenario(&s).unwrap(), f), render(&run_scenario(&s).unwrap(), f));
        }
        assert!("yaml".parse::<Format>().is_err());
    }
}
