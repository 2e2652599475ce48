//! Legendrian knot invariants from front-projection counts, the Stein
//! handle-attachment condition, and the slice–Bennequin genus bound.
//!
//! A front is summarized by its writhe and its numbers of downward and
//! upward cusps; that is all `tb` and `rot` depend on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("a front has an even number (at least 2) of cusps, got {down} down and {up} up")]
    CuspCount { down: u64, up: u64 },
    #[error("unknown front `{0}` in fixture")]
    UnknownFront(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFront", into = "RawFront")]
pub struct FrontData {
    writhe: i64,
    down_cusps: u64,
    up_cusps: u64,
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFront {
    writhe: i64,
    down_cusps: u64,
    up_cusps: u64,
}

impl TryFrom<RawFront> for FrontData {
    type Error = FrontError;

    fn try_from(r: RawFront) -> Result<Self, FrontError> {
        FrontData::new(r.writhe, r.down_cusps, r.up_cusps)
    }
}

impl From<FrontData> for RawFront {
    fn from(f: FrontData) -> Self {
        RawFront {
            writhe: f.writhe,
            down_cusps: f.down_cusps,
            up_cusps: f.up_cusps,
        }
    }
}

impl FrontData {
    pub fn new(writhe: i64, down_cusps: u64, up_cusps: u64) -> Result<Self, FrontError> {
        let total = down_cusps + up_cusps;
        if total < 2 || total % 2 != 0 {
            return Err(FrontError::CuspCount {
                down: down_cusps,
                up: up_cusps,
            });
        }
        Ok(FrontData {
            writhe,
            down_cusps,
            up_cusps,
        })
    }

    /// The standard two-cusp unknot: `tb = −1`, `rot = 0`.
    pub fn unknot() -> Self {
        FrontData {
            writhe: 0,
            down_cusps: 1,
            up_cusps: 1,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.writhe
    }

    pub fn down_cusps(&self) -> u64 {
        self.down_cusps
    }

    pub fn up_cusps(&self) -> u64 {
        self.up_cusps
    }

    /// Adds a zig-zag: two cusps of the same direction. Positive
    /// stabilization adds two down cusps (`rot + 1`), negative two up
    /// cusps (`rot − 1`); either lowers `tb` by one.
    pub fn stabilize(&self, positive: bool) -> Self {
        let mut out = *self;
        if positive {
            out.down_cusps += 2;
        } else {
            out.up_cusps += 2;
        }
        out
    }
}

pub fn tb(front: &FrontData) -> i64 {
    front.writhe - ((front.down_cusps + front.up_cusps) / 2) as i64
}

pub fn rot(front: &FrontData) -> i64 {
    (front.down_cusps as i64 - front.up_cusps as i64) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HandleCheck {
    pub framing: i64,
    pub tb: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinReport {
    pub holds: bool,
    pub handles: Vec<HandleCheck>,
}

/// A Legendrian handlebody is Stein when every 2-handle is attached with
/// framing `tb − 1` (Eliashberg, Gompf).
pub fn stein_condition(handles: &[(i64, FrontData)]) -> SteinReport {
    let handles: Vec<HandleCheck> = handles
        .iter()
        .map(|(framing, front)| {
            let t = tb(front);
            HandleCheck {
                framing: *framing,
                tb: t,
                holds: *framing == t - 1,
            }
        })
        .collect();
    SteinReport {
        holds: handles.iter().all(|h| h.holds),
        handles,
    }
}

/// Least `g ≥ 0` with `tb + |rot| ≤ 2g − 1`. A knot in the boundary of a
/// Stein domain bounds no surface of smaller genus in it
/// (Akbulut–Matveyev, Lisca–Matić). Zero means no obstruction.
pub fn slice_bennequin_genus_bound(tb: i64, rot: i64) -> u64 {
    let need = tb + rot.abs() + 1;
    if need <= 0 {
        0
    } else {
        ((need + 1) / 2) as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureHandle {
    pub front: String,
    pub framing: i64,
}

/// Named fronts and a handle list, as stored in the JSON fixture.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrontFixture {
    pub note: String,
    pub fronts: BTreeMap<String, FrontData>,
    pub handles: Vec<FixtureHandle>,
}

impl FrontFixture {
    pub fn front(&self, name: &str) -> Result<FrontData, FrontError> {
        self.fronts
            .get(name)
            .copied()
            .ok_or_else(|| FrontError::UnknownFront(name.to_string()))
    }

    pub fn handle_list(&self) -> Result<Vec<(i64, FrontData)>, FrontError> {
        self.handles
            .iter()
            .map(|h| Ok((h.framing, self.front(&h.front)?)))
            .collect()
    }
}

const STEIN_FRONTS: &str = include_str!("../fixtures/stein_fronts.json");

/// The Stein handlebody `L1 ⊔ L2` with the curve `alpha`.
pub fn stein_fixture() -> FrontFixture {
    serde_json::from_str(STEIN_FRONTS).expect("bundled fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn invariants() {
        assert_eq!(tb(&FrontData::unknot()), -1);
        assert_eq!(rot(&FrontData::unknot()), 0);
        assert_eq!(rot(&FrontData::new(0, 3, 1).unwrap()), 1);
        assert!(FrontData::new(0, 1, 0).is_err());
        assert!(FrontData::new(0, 0, 0).is_err());
        assert!(FrontData::new(0, 2, 1).is_err());
    }

    #[test]
    fn fixture_values() {
        let fx = stein_fixture();
        assert_eq!(tb(&fx.front("L1").unwrap()), 0);
        assert_eq!(tb(&fx.front("L2").unwrap()), 1);
        let alpha = fx.front("alpha").unwrap();
        assert_eq!((tb(&alpha), rot(&alpha)), (0, 0));
        let report = stein_condition(&fx.handle_list().unwrap());
        assert!(report.holds);
        assert_eq!(report.handles.iter().map(|h| h.framing).collect::<Vec<_>>(), vec![-1, 0]);
        assert!(!stein_condition(&[(0, fx.front("L1").unwrap())]).holds);
        assert!(stein_condition(&[]).holds);
        assert!(matches!(fx.front("L3"), Err(FrontError::UnknownFront(_))));
    }

    #[test]
    fn genus_bounds() {
        assert_eq!(slice_bennequin_genus_bound(0, 0), 1);
        assert_eq!(slice_bennequin_genus_bound(-1, 0), 0);
        assert_eq!(slice_bennequin_genus_bound(3, 2), 3);
        assert_eq!(slice_bennequin_genus_bound(-5, 1), 0);
    }

    #[test]
    fn fixture_rejects_bad_fronts() {
        let bad = r#"{"writhe": 0, "down_cusps": 1, "up_cusps": 0}"#;
        assert!(serde_json::from_str::<FrontData>(bad).is_err());
    }

    fn arb_front() -> impl Strategy<Value = FrontData> {
        (-6i64..=6, 0u64..=5, 0u64..=5)
            .prop_filter_map("cusp parity", |(w, d, u)| FrontData::new(w, d, u).ok())
    }

    proptest! {
        #[test]
        fn stabilization(f in arb_front(), positive in any::<bool>()) {
            let s = f.stabilize(positive);
            prop_assert_eq!(tb(&s), tb(&f) - 1);
            prop_assert_eq!((rot(&s) - rot(&f)).abs(), 1);
            prop_assert!(tb(&s) + rot(&s).abs() <= tb(&f) + rot(&f).abs());
        }

        #[test]
        fn bound_is_even_in_rot(t in -20i64..=20, r in -20i64..=20) {
            prop_assert_eq!(slice_bennequin_genus_bound(t, r), slice_bennequin_genus_bound(t, -r));
            let g = slice_bennequin_genus_bound(t, r) as i64;
            prop_assert!(t + r.abs() <= 2 * g - 1 || g == 0);
            if g > 0 {
                prop_assert!(t + r.abs() > 2 * (g - 1) - 1);
            }
        }

        #[test]
        fn stein_is_conjunction(a in prop::collection::vec((-3i64..=3, arb_front()), 0..4),
                                b in prop::collection::vec((-3i64..=3, arb_front()), 0..4)) {
            let joined: Vec<_> = a.iter().chain(&b).copied().collect();
            prop_assert_eq!(stein_condition(&joined).holds, stein_condition(&a).holds && stein_condition(&b).holds);
        }
    }
}
