//! Surgery presentations of 3-manifolds and named curves in them.
//!
//! A presentation is a framed link in S³: dotted circles (1-handles) and
//! framed circles (2-handles), with pairwise linking numbers supplied as
//! data. Curves in the boundary carry their S³ linking with each component
//! and with pushoffs of each other.
//!
//! Text format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! component L1 dotted
//! component L2 framed -3
//! lk L1 L2 1
//! curve alpha lk ( 1 0 ) self 0
//! curve beta lk ( 0 1 ) self 0
//! pushoff alpha beta 0 1
//! ```
//!
//! `pushoff A B x y` records `lk(A, B⁺) = x` and `lk(B, A⁺) = y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Dotted,
    Framed,
}

/// JSON mirror of a `component` line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentData {
    pub id: String,
    pub kind: ComponentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<i64>,
}

/// JSON mirror of an `lk` line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkingData {
    pub a: String,
    pub b: String,
    pub value: i64,
}

/// JSON mirror of a `curve` line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveData {
    pub id: String,
    pub component_linkings: Vec<i64>,
    pub pushoff_self_linking: i64,
}

/// JSON mirror of a `pushoff` line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushoffData {
    pub a: String,
    pub b: String,
    /// `lk(a, b⁺)`
    pub a_with_b_pushoff: i64,
    /// `lk(b, a⁺)`
    pub b_with_a_pushoff: i64,
}

/// Unvalidated presentation, one field per kind of declaration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationData {
    #[serde(default)]
    pub components: Vec<ComponentData>,
    #[serde(default)]
    pub linkings: Vec<LinkingData>,
    #[serde(default)]
    pub curves: Vec<CurveData>,
    #[serde(default)]
    pub pushoffs: Vec<PushoffData>,
}

/// Which declaration a violation is about, as an index into the
/// corresponding list of [`PresentationData`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Component(usize),
    Linking(usize),
    Curve(usize),
    Pushoff(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ViolationKind {
    #[error("duplicate component id `{0}`")]
    DuplicateComponent(String),
    #[error("duplicate curve id `{0}`")]
    DuplicateCurve(String),
    #[error("dotted component `{0}` cannot carry a framing")]
    FramingOnDotted(String),
    #[error("framed component `{0}` needs an integer framing")]
    MissingFraming(String),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("linking of `{0}` with itself is the framing, not an lk declaration")]
    SelfLinking(String),
    #[error("linking of `{a}` and `{b}` declared as both {first} and {second}")]
    AsymmetricLinking {
        a: String,
        b: String,
        first: i64,
        second: i64,
    },
    #[error("curve `{curve}` lists {found} component linkings, expected {expected}")]
    CurveLinkingLength {
        curve: String,
        expected: usize,
        found: usize,
    },
    #[error("pushoff of `{0}` with itself belongs in its `self` field")]
    SelfPushoff(String),
    #[error("conflicting pushoff data for `{a}` and `{b}`")]
    ConflictingPushoff { a: String, b: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub locus: Locus,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

/// Every invariant violated by `data`; empty iff the data is a valid
/// presentation.
pub fn validate(data: &PresentationData) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |locus, kind| out.push(Violation { locus, kind });

    let mut component_index = HashMap::new();
    for (i, c) in data.components.iter().enumerate() {
        if component_index.insert(c.id.as_str(), i).is_some() {
            push(Locus::Component(i), ViolationKind::DuplicateComponent(c.id.clone()));
        }
        match (c.kind, c.framing) {
            (ComponentKind::Dotted, Some(_)) => {
                push(Locus::Component(i), ViolationKind::FramingOnDotted(c.id.clone()))
            }
            (ComponentKind::Framed, None) => {
                push(Locus::Component(i), ViolationKind::MissingFraming(c.id.clone()))
            }
            _ => {}
        }
    }

    let mut seen_lk: HashMap<(usize, usize), i64> = HashMap::new();
    for (i, lk) in data.linkings.iter().enumerate() {
        let a = component_index.get(lk.a.as_str());
        let b = component_index.get(lk.b.as_str());
        for (id, idx) in [(&lk.a, a), (&lk.b, b)] {
            if idx.is_none() {
                push(Locus::Linking(i), ViolationKind::UnknownComponent(id.clone()));
            }
        }
        let (Some(&a), Some(&b)) = (a, b) else { continue };
        if a == b {
            push(Locus::Linking(i), ViolationKind::SelfLinking(lk.a.clone()));
            continue;
        }
        let key = (a.min(b), a.max(b));
        match seen_lk.get(&key) {
            Some(&prev) if prev != lk.value => push(
                Locus::Linking(i),
                ViolationKind::AsymmetricLinking {
                    a: lk.a.clone(),
                    b: lk.b.clone(),
                    first: prev,
                    second: lk.value,
                },
            ),
            Some(_) => {}
            None => {
                seen_lk.insert(key, lk.value);
            }
        }
    }

    let mut curve_index = HashMap::new();
    for (i, c) in data.curves.iter().enumerate() {
        if curve_index.insert(c.id.as_str(), i).is_some() {
            push(Locus::Curve(i), ViolationKind::DuplicateCurve(c.id.clone()));
        }
        if c.component_linkings.len() != data.components.len() {
            push(
                Locus::Curve(i),
                ViolationKind::CurveLinkingLength {
                    curve: c.id.clone(),
                    expected: data.components.len(),
                    found: c.component_linkings.len(),
                },
            );
        }
    }

    let mut seen_pushoff: HashMap<(usize, usize), (i64, i64)> = HashMap::new();
    for (i, p) in data.pushoffs.iter().enumerate() {
        let a = curve_index.get(p.a.as_str());
        let b = curve_index.get(p.b.as_str());
        for (id, idx) in [(&p.a, a), (&p.b, b)] {
            if idx.is_none() {
                push(Locus::Pushoff(i), ViolationKind::UnknownCurve(id.clone()));
            }
        }
        let (Some(&a), Some(&b)) = (a, b) else { continue };
        if a == b {
            push(Locus::Pushoff(i), ViolationKind::SelfPushoff(p.a.clone()));
            continue;
        }
        // stored as (lk(lo, hi⁺), lk(hi, lo⁺))
        let (key, value) = if a < b {
            ((a, b), (p.a_with_b_pushoff, p.b_with_a_pushoff))
        } else {
            ((b, a), (p.b_with_a_pushoff, p.a_with_b_pushoff))
        };
        match seen_pushoff.get(&key) {
            Some(&prev) if prev != value => push(
                Locus::Pushoff(i),
                ViolationKind::ConflictingPushoff {
                    a: p.a.clone(),
                    b: p.b.clone(),
                },
            ),
            Some(_) => {}
            None => {
                seen_pushoff.insert(key, value);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentRecord {
    Dotted { id: String },
    Framed { id: String, framing: i64 },
}

impl ComponentRecord {
    pub fn id(&self) -> &str {
        match self {
            ComponentRecord::Dotted { id } | ComponentRecord::Framed { id, .. } => id,
        }
    }

    pub fn kind(&self) -> ComponentKind {
        match self {
            ComponentRecord::Dotted { .. } => ComponentKind::Dotted,
            ComponentRecord::Framed { .. } => ComponentKind::Framed,
        }
    }

    /// Diagonal entry of the linking matrix: dots count as 0-framings.
    pub fn surgery_coefficient(&self) -> i64 {
        match self {
            ComponentRecord::Dotted { .. } => 0,
            ComponentRecord::Framed { framing, .. } => *framing,
        }
    }
}

/// S³ linking data of a curve in the boundary of the surgered manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub id: String,
    /// Linking with each component, in component order.
    pub component_linkings: Vec<i64>,
    /// `lk(c, c⁺)` for the tangential pushoff `c⁺`.
    pub pushoff_self_linking: i64,
    /// other id ↦ `(lk(this, other⁺), lk(other, this⁺))`
    pub cross_pushoff_linkings: BTreeMap<String, (i64, i64)>,
}

/// A meridian/longitude pair on a boundary torus, with the pushoff data
/// relating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCurveBasis {
    pub alpha: CurveSpec,
    pub beta: CurveSpec,
    /// `lk(α, β⁺)`
    pub alpha_with_beta_pushoff: i64,
    /// `lk(β, α⁺)`
    pub beta_with_alpha_pushoff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {violation}")]
    Invalid {
        line: usize,
        column: usize,
        violation: Violation,
    },
    #[error("invalid presentation: {}", join_violations(.0))]
    Violations(Vec<Violation>),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("no pushoff data between `{0}` and `{1}`")]
    MissingPushoff(String, String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A validated surgery presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationData", into = "PresentationData")]
pub struct SurgeryPresentation {
    components: Vec<ComponentRecord>,
    /// Symmetric with zero diagonal.
    linking: Vec<Vec<i64>>,
    curves: Vec<CurveData>,
    /// Keyed by curve indices `(i, j)` with `i < j`:
    /// `(lk(cᵢ, cⱼ⁺), lk(cⱼ, cᵢ⁺))`.
    pushoffs: BTreeMap<(usize, usize), (i64, i64)>,
}

impl SurgeryPresentation {
    /// Empty surgery: S³.
    pub fn empty() -> Self {
        SurgeryPresentation {
            components: Vec::new(),
            linking: Vec::new(),
            curves: Vec::new(),
            pushoffs: BTreeMap::new(),
        }
    }

    pub fn from_data(data: &PresentationData) -> Result<Self, PresentationError> {
        let violations = validate(data);
        if !violations.is_empty() {
            return Err(PresentationError::Violations(violations));
        }
        Ok(Self::from_valid_data(data))
    }

    fn from_valid_data(data: &PresentationData) -> Self {
        let components: Vec<ComponentRecord> = data
            .components
            .iter()
            .map(|c| match c.kind {
                ComponentKind::Dotted => ComponentRecord::Dotted { id: c.id.clone() },
                ComponentKind::Framed => ComponentRecord::Framed {
                    id: c.id.clone(),
                    framing: c.framing.expect("validated"),
                },
            })
            .collect();
        let index: HashMap<&str, usize> = data
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        let n = components.len();
        let mut linking = vec![vec![0; n]; n];
        for lk in &data.linkings {
            let (a, b) = (index[lk.a.as_str()], index[lk.b.as_str()]);
            linking[a][b] = lk.value;
            linking[b][a] = lk.value;
        }
        let curve_index: HashMap<&str, usize> = data
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        let mut pushoffs = BTreeMap::new();
        for p in &data.pushoffs {
            let (a, b) = (curve_index[p.a.as_str()], curve_index[p.b.as_str()]);
            if a < b {
                pushoffs.insert((a, b), (p.a_with_b_pushoff, p.b_with_a_pushoff));
            } else {
                pushoffs.insert((b, a), (p.b_with_a_pushoff, p.a_with_b_pushoff));
            }
        }
        SurgeryPresentation {
            components,
            linking,
            curves: data.curves.clone(),
            pushoffs,
        }
    }

    pub fn components(&self) -> &[ComponentRecord] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// S³ linking number of components `i != j`; 0 on the diagonal.
    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn curve_ids(&self) -> impl Iterator<Item = &str> {
        self.curves.iter().map(|c| c.id.as_str())
    }

    pub fn curve(&self, id: &str) -> Option<CurveSpec> {
        let i = self.curves.iter().position(|c| c.id == id)?;
        let data = &self.curves[i];
        let mut cross = BTreeMap::new();
        for (&(a, b), &(ab, ba)) in &self.pushoffs {
            if a == i {
                cross.insert(self.curves[b].id.clone(), (ab, ba));
            } else if b == i {
                cross.insert(self.curves[a].id.clone(), (ba, ab));
            }
        }
        Some(CurveSpec {
            id: data.id.clone(),
            component_linkings: data.component_linkings.clone(),
            pushoff_self_linking: data.pushoff_self_linking,
            cross_pushoff_linkings: cross,
        })
    }

    /// The pair `(alpha, beta)` together with their cross-pushoff data.
    pub fn torus_basis(&self, alpha: &str, beta: &str) -> Result<TorusCurveBasis, PresentationError> {
        let a = self
            .curve(alpha)
            .ok_or_else(|| PresentationError::UnknownCurve(alpha.to_string()))?;
        let b = self
            .curve(beta)
            .ok_or_else(|| PresentationError::UnknownCurve(beta.to_string()))?;
        let &(ab, ba) = a
            .cross_pushoff_linkings
            .get(beta)
            .ok_or_else(|| PresentationError::MissingPushoff(alpha.to_string(), beta.to_string()))?;
        Ok(TorusCurveBasis {
            alpha: a,
            beta: b,
            alpha_with_beta_pushoff: ab,
            beta_with_alpha_pushoff: ba,
        })
    }

    /// Framings (dots as 0) on the diagonal, S³ linking numbers off it.
    pub fn boundary_linking_matrix(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(self.components[i].surgery_coefficient())
            } else {
                BigInt::from(self.linking[i][j])
            }
        })
    }

    /// Reorders components so that new position `k` holds old component
    /// `perm[k]`; curve linking vectors follow.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n, "permutation length");
        let mut check = perm.to_vec();
        check.sort_unstable();
        assert!(check.iter().copied().eq(0..n), "not a permutation");
        SurgeryPresentation {
            components: perm.iter().map(|&i| self.components[i].clone()).collect(),
            linking: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.linking[i][j]).collect())
                .collect(),
            curves: self
                .curves
                .iter()
                .map(|c| CurveData {
                    id: c.id.clone(),
                    component_linkings: perm.iter().map(|&i| c.component_linkings[i]).collect(),
                    pushoff_self_linking: c.pushoff_self_linking,
                })
                .collect(),
            pushoffs: self.pushoffs.clone(),
        }
    }

    /// Canonical data: declaration order, one `lk` entry per nonzero pair
    /// `i < j`, one pushoff entry per curve pair `i < j`.
    pub fn to_data(&self) -> PresentationData {
        let components = self
            .components
            .iter()
            .map(|c| ComponentData {
                id: c.id().to_string(),
                kind: c.kind(),
                framing: match c {
                    ComponentRecord::Dotted { .. } => None,
                    ComponentRecord::Framed { framing, .. } => Some(*framing),
                },
            })
            .collect();
        let mut linkings = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.linking[i][j] != 0 {
                    linkings.push(LinkingData {
                        a: self.components[i].id().to_string(),
                        b: self.components[j].id().to_string(),
                        value: self.linking[i][j],
                    });
                }
            }
        }
        let pushoffs = self
            .pushoffs
            .iter()
            .map(|(&(a, b), &(ab, ba))| PushoffData {
                a: self.curves[a].id.clone(),
                b: self.curves[b].id.clone(),
                a_with_b_pushoff: ab,
                b_with_a_pushoff: ba,
            })
            .collect();
        PresentationData {
            components,
            linkings,
            curves: self.curves.clone(),
            pushoffs,
        }
    }

    /// Canonical text form; `parse_presentation` of the output returns an
    /// equal presentation.
    pub fn to_text(&self) -> String {
        let data = self.to_data();
        let mut out = String::new();
        for c in &data.components {
            match c.framing {
                None => out.push_str(&format!("component {} dotted\n", c.id)),
                Some(f) => out.push_str(&format!("component {} framed {}\n", c.id, f)),
            }
        }
        for lk in &data.linkings {
            out.push_str(&format!("lk {} {} {}\n", lk.a, lk.b, lk.value));
        }
        for c in &data.curves {
            let lks: Vec<String> = c.component_linkings.iter().map(i64::to_string).collect();
            let inner = if lks.is_empty() {
                String::new()
            } else {
                format!("{} ", lks.join(" "))
            };
            out.push_str(&format!("curve {} lk ( {}) self {}\n", c.id, inner, c.pushoff_self_linking));
        }
        for p in &data.pushoffs {
            out.push_str(&format!(
                "pushoff {} {} {} {}\n",
                p.a, p.b, p.a_with_b_pushoff, p.b_with_a_pushoff
            ));
        }
        out
    }
}

impl TryFrom<PresentationData> for SurgeryPresentation {
    type Error = PresentationError;

    fn try_from(data: PresentationData) -> Result<Self, Self::Error> {
        SurgeryPresentation::from_data(&data)
    }
}

impl From<SurgeryPresentation> for PresentationData {
    fn from(p: SurgeryPresentation) -> Self {
        p.to_data()
    }
}

pub fn boundary_linking_matrix(pres: &SurgeryPresentation) -> IntMatrix {
    pres.boundary_linking_matrix()
}

/// The two-component presentation of a solid torus in the boundary of a
/// Mazur-type manifold: `L1` dotted, `L2` with framing `n`, linking once,
/// with meridian `alpha` and longitude `beta` of the boundary torus.
pub fn dotted_pair_presentation(n: i64) -> SurgeryPresentation {
    let text = format!(
        "component L1 dotted\n\
         component L2 framed {n}\n\
         lk L1 L2 1\n\
         curve alpha lk ( 1 0 ) self 0\n\
         curve beta lk ( 0 1 ) self 0\n\
         pushoff alpha beta 0 1\n"
    );
    parse_presentation(&text).expect("built-in presentation is valid")
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (byte, ch) in code.char_indices() {
        let is_paren = ch == '(' || ch == ')';
        if ch.is_whitespace() || is_paren {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &code[s..byte],
                    column: code[..s].chars().count() + 1,
                });
            }
            if is_paren {
                out.push(Token {
                    text: &code[byte..byte + 1],
                    column: code[..byte].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(byte);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    out
}

struct LineParser<'a> {
    line: usize,
    end_column: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
}

impl<'a> LineParser<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn next_column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn peek(&self) -> Option<&'a str> {
        self.tokens.get(self.pos).map(|t| t.text)
    }

    fn next(&mut self, what: &str) -> Result<&'a str, PresentationError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.text)
            }
            None => Err(self.error(self.end_column, format!("expected {what}"))),
        }
    }

    fn ident(&mut self) -> Result<String, PresentationError> {
        let column = self.next_column();
        let text = self.next("identifier")?;
        let valid = text
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '\'' || c == '.' || c == '+');
        let starts_ok = text.chars().next().is_some_and(|c| !c.is_ascii_digit() && c != '-' && c != '+');
        if !valid || !starts_ok {
            return Err(self.error(column, format!("invalid identifier `{text}`")));
        }
        Ok(text.to_string())
    }

    fn int(&mut self) -> Result<i64, PresentationError> {
        let column = self.next_column();
        let text = self.next("integer")?;
        text.parse()
            .map_err(|_| self.error(column, format!("expected integer, found `{text}`")))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), PresentationError> {
        let column = self.next_column();
        let text = self.next(&format!("`{kw}`"))?;
        if text != kw {
            return Err(self.error(column, format!("expected `{kw}`, found `{text}`")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<(), PresentationError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(self.error(t.column, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

/// Parses the text format and validates the result. Semantic errors are
/// reported at the line of the offending declaration.
pub fn parse_presentation(text: &str) -> Result<SurgeryPresentation, PresentationError> {
    let mut data = PresentationData::default();
    let mut component_lines = Vec::new();
    let mut linking_lines = Vec::new();
    let mut curve_lines = Vec::new();
    let mut pushoff_lines = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let mut p = LineParser {
            line: k + 1,
            end_column: raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1,
            tokens: tokenize(raw),
            pos: 0,
        };
        let Some(head) = p.peek() else { continue };
        let location = (k + 1, 1);
        p.pos += 1;
        match head {
            "component" => {
                let id = p.ident()?;
                let column = p.next_column();
                let kind = match p.next("`dotted` or `framed`")? {
                    "dotted" => ComponentKind::Dotted,
                    "framed" => ComponentKind::Framed,
                    other => {
                        return Err(p.error(column, format!("expected `dotted` or `framed`, found `{other}`")))
                    }
                };
                let framing = if p.peek().is_some() { Some(p.int()?) } else { None };
                p.finish()?;
                data.components.push(ComponentData { id, kind, framing });
                component_lines.push(location);
            }
            "lk" => {
                let a = p.ident()?;
                let b = p.ident()?;
                let value = p.int()?;
                p.finish()?;
                data.linkings.push(LinkingData { a, b, value });
                linking_lines.push(location);
            }
            "curve" => {
                let id = p.ident()?;
                p.keyword("lk")?;
                p.keyword("(")?;
                let mut component_linkings = Vec::new();
                while p.peek().is_some_and(|t| t != ")") {
                    component_linkings.push(p.int()?);
                }
                p.keyword(")")?;
                p.keyword("self")?;
                let pushoff_self_linking = p.int()?;
                p.finish()?;
                data.curves.push(CurveData {
                    id,
                    component_linkings,
                    pushoff_self_linking,
                });
                curve_lines.push(location);
            }
            "pushoff" => {
                let a = p.ident()?;
                let b = p.ident()?;
                let a_with_b_pushoff = p.int()?;
                let b_with_a_pushoff = p.int()?;
                p.finish()?;
                data.pushoffs.push(PushoffData {
                    a,
                    b,
                    a_with_b_pushoff,
                    b_with_a_pushoff,
                });
                pushoff_lines.push(location);
            }
            other => {
                return Err(p.error(1, format!("unknown declaration `{other}`")));
            }
        }
    }

    if let Some(v) = validate(&data).into_iter().next() {
        let (line, column) = match v.locus {
            Locus::Component(i) => component_lines[i],
            Locus::Linking(i) => linking_lines[i],
            Locus::Curve(i) => curve_lines[i],
            Locus::Pushoff(i) => pushoff_lines[i],
        };
        return Err(PresentationError::Invalid {
            line,
            column,
            violation: v,
        });
    }
    Ok(SurgeryPresentation::from_valid_data(&data))
}

/// Parse then serialize: the canonical form of a presentation text.
pub fn canonicalize(text: &str) -> Result<String, PresentationError> {
    parse_presentation(text).map(|p| p.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PAIR: &str = "# Mazur-type pair\n\
        component L1 dotted\n\
        component L2 framed 3   # n = 3\n\
        lk L2 L1 1\n\
        curve alpha lk ( 1 0 ) self 0\n\
        curve beta lk (0 1) self 0\n\
        pushoff beta alpha 1 0\n";

    #[test]
    fn dotted_pair_matrix() {
        let p = parse_presentation(PAIR).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.boundary_linking_matrix(), IntMatrix::from_i64(&[[0, 1], [1, 3]]));
        let basis = p.torus_basis("alpha", "beta").unwrap();
        assert_eq!(basis.alpha_with_beta_pushoff, 0);
        assert_eq!(basis.beta_with_alpha_pushoff, 1);
        assert_eq!(p, dotted_pair_presentation(3));
    }

    #[test]
    fn empty_is_s3() {
        let p = parse_presentation("# nothing\n\n").unwrap();
        assert!(p.is_empty());
        assert_eq!(p.boundary_linking_matrix().rows(), 0);
        assert_eq!(p.to_text(), "");
    }

    #[test]
    fn single_and_split_links() {
        let p = parse_presentation("component U framed 0").unwrap();
        assert_eq!(p.boundary_linking_matrix(), IntMatrix::from_i64(&[[0]]));
        let p = parse_presentation("component a framed 2\ncomponent b framed -1\ncomponent c framed 5\n").unwrap();
        assert_eq!(
            p.boundary_linking_matrix(),
            IntMatrix::from_i64(&[[2, 0, 0], [0, -1, 0], [0, 0, 5]])
        );
    }

    #[test]
    fn framing_on_dotted_rejected_with_location() {
        let err = parse_presentation("component A framed 1\ncomponent L1 dotted 2\n").unwrap_err();
        match err {
            PresentationError::Invalid { line, violation, .. } => {
                assert_eq!(line, 2);
                assert_eq!(violation.kind, ViolationKind::FramingOnDotted("L1".into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_report_columns() {
        let err = parse_presentation("component A framed x").unwrap_err();
        assert_eq!(
            err,
            PresentationError::Syntax {
                line: 1,
                column: 20,
                message: "expected integer, found `x`".into()
            }
        );
        let err = parse_presentation("component A framed 1\n  lk A").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 2, column: 7, .. }), "{err:?}");
        let err = parse_presentation("knot K").unwrap_err();
        assert!(matches!(err, PresentationError::Syntax { line: 1, column: 1, .. }));
    }

    #[test]
    fn duplicate_and_asymmetric() {
        let err = parse_presentation("component A dotted\ncomponent A framed 0\n").unwrap_err();
        assert!(matches!(
            err,
            PresentationError::Invalid { line: 2, violation: Violation { kind: ViolationKind::DuplicateComponent(_), .. }, .. }
        ));
        let text = "component A framed 0\ncomponent B framed 0\nlk A B 1\nlk B A 2\n";
        let err = parse_presentation(text).unwrap_err();
        assert!(matches!(
            err,
            PresentationError::Invalid { line: 4, violation: Violation { kind: ViolationKind::AsymmetricLinking { .. }, .. }, .. }
        ));
        // restating the same value from the other side is fine
        parse_presentation("component A framed 0\ncomponent B framed 0\nlk A B 1\nlk B A 1\n").unwrap();
    }

    #[test]
    fn validate_counts_violations() {
        assert!(validate(&dotted_pair_presentation(-2).to_data()).is_empty());
        let mut data = dotted_pair_presentation(1).to_data();
        data.components.push(data.components[0].clone());
        assert_eq!(validate(&data).len(), 3); // duplicate id plus two short curve vectors
        let mut data = dotted_pair_presentation(1).to_data();
        data.curves[0].component_linkings.push(4);
        let v = validate(&data);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0].kind, ViolationKind::CurveLinkingLength { expected: 2, found: 3, .. }));
    }

    #[test]
    fn json_mirror_round_trip() {
        let p = dotted_pair_presentation(4);
        let json = serde_json::to_string(&p).unwrap();
        let back: SurgeryPresentation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"components":[{"id":"A","kind":"dotted","framing":1}]}"#;
        assert!(serde_json::from_str::<SurgeryPresentation>(bad).is_err());
        let unknown = r#"{"components":[],"extra":1}"#;
        assert!(serde_json::from_str::<PresentationData>(unknown).is_err());
    }

    #[test]
    fn missing_pushoff() {
        let p = parse_presentation("component A framed 1\ncurve x lk ( 1 ) self 0\ncurve y lk ( 0 ) self 0\n").unwrap();
        assert!(matches!(p.torus_basis("x", "y"), Err(PresentationError::MissingPushoff(..))));
        assert!(matches!(p.torus_basis("x", "z"), Err(PresentationError::UnknownCurve(_))));
    }

    fn arb_data() -> impl Strategy<Value = PresentationData> {
        (1usize..5).prop_flat_map(|n| {
            (
                prop::collection::vec(prop::option::of(-6i64..7), n),
                prop::collection::vec(-4i64..5, n * n),
                prop::collection::vec((prop::collection::vec(-3i64..4, n), -3i64..4), 0..3),
                prop::collection::vec((-3i64..4, -3i64..4, any::<bool>()), 3),
            )
                .prop_map(move |(framings, lks, curves, pushoffs)| {
                    let ids: Vec<String> = (0..n).map(|i| format!("K{i}")).collect();
                    let components = framings
                        .iter()
                        .zip(&ids)
                        .map(|(f, id)| ComponentData {
                            id: id.clone(),
                            kind: if f.is_some() { ComponentKind::Framed } else { ComponentKind::Dotted },
                            framing: *f,
                        })
                        .collect();
                    let mut linkings = Vec::new();
                    for i in 0..n {
                        for j in 0..n {
                            if i < j {
                                // declare from a random side, sometimes omit zeros
                                let v = lks[i * n + j];
                                let (a, b) = if lks[j * n + i] % 2 == 0 { (i, j) } else { (j, i) };
                                if v != 0 || lks[j * n + i] > 0 {
                                    linkings.push(LinkingData { a: ids[a].clone(), b: ids[b].clone(), value: v });
                                }
                            }
                        }
                    }
                    let curves: Vec<CurveData> = curves
                        .into_iter()
                        .enumerate()
                        .map(|(i, (component_linkings, s))| CurveData {
                            id: format!("c{i}"),
                            component_linkings,
                            pushoff_self_linking: s,
                        })
                        .collect();
                    let mut pushoff_list = Vec::new();
                    let pairs: Vec<(usize, usize)> =
                        (0..curves.len()).flat_map(|i| (i + 1..curves.len()).map(move |j| (i, j))).collect();
                    for (&(i, j), &(x, y, flip)) in pairs.iter().zip(&pushoffs) {
                        let (a, b, x, y) = if flip { (j, i, y, x) } else { (i, j, x, y) };
                        pushoff_list.push(PushoffData {
                            a: curves[a].id.clone(),
                            b: curves[b].id.clone(),
                            a_with_b_pushoff: x,
                            b_with_a_pushoff: y,
                        });
                    }
                    PresentationData { components, linkings, curves, pushoffs: pushoff_list }
                })
        })
    }

    fn render_raw(data: &PresentationData) -> String {
        // deliberately non-canonical spacing and comments
        let mut out = String::from("# generated\n");
        for c in &data.components {
            match c.framing {
                Some(f) => out.push_str(&format!("component   {}  framed {}  # c\n", c.id, f)),
                None => out.push_str(&format!("component {} dotted\n\n", c.id)),
            }
        }
        for lk in &data.linkings {
            out.push_str(&format!("\tlk {} {} {}\n", lk.a, lk.b, lk.value));
        }
        for c in &data.curves {
            let v: Vec<String> = c.component_linkings.iter().map(i64::to_string).collect();
            out.push_str(&format!("curve {} lk ({}) self {}\n", c.id, v.join("  "), c.pushoff_self_linking));
        }
        for p in &data.pushoffs {
            out.push_str(&format!("pushoff {} {} {} {}\n", p.a, p.b, p.a_with_b_pushoff, p.b_with_a_pushoff));
        }
        out
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent(data in arb_data()) {
            let raw = render_raw(&data);
            let parsed = parse_presentation(&raw).unwrap();
            let canon = parsed.to_text();
            prop_assert_eq!(canonicalize(&canon).unwrap(), canon.clone());
            prop_assert_eq!(parse_presentation(&canon).unwrap(), parsed.clone());
            let json = serde_json::to_string(&parsed).unwrap();
            prop_assert_eq!(serde_json::from_str::<SurgeryPresentation>(&json).unwrap(), parsed);
        }

        #[test]
        fn linking_matrix_symmetric_with_zero_dots(data in arb_data()) {
            let p = SurgeryPresentation::from_data(&data).unwrap();
            let b = p.boundary_linking_matrix();
            prop_assert!(b.is_symmetric());
            for (i, c) in p.components().iter().enumerate() {
                if c.kind() == ComponentKind::Dotted {
                    prop_assert_eq!(b[(i, i)].clone(), BigInt::from(0));
                }
            }
        }

        #[test]
        fn permutation_conjugates_matrix(data in arb_data(), seed in any::<u64>()) {
            let p = SurgeryPresentation::from_data(&data).unwrap();
            let n = p.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let q = p.permuted(&perm);
            // P with P[k][perm[k]] = 1, so P B Pᵀ has entry (k, l) = B[perm[k]][perm[l]]
            let pm = IntMatrix::from_fn(n, n, |k, l| BigInt::from((perm[k] == l) as i64));
            let conj = &(&pm * &p.boundary_linking_matrix()) * &pm.transpose();
            prop_assert_eq!(q.boundary_linking_matrix(), conj);
        }
    }
}
