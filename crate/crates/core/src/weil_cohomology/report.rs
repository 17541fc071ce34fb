//! Machine-readable form of a [`VerificationReport`], one object per field.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::VerificationReport;
use crate::abelian::FgAbGroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub rank: usize,
    pub factors: Vec<u64>,
}

impl From<&FgAbGroup> for GroupRecord {
    fn from(g: &FgAbGroup) -> Self {
        Self {
            rank: g.free_rank(),
            factors: g
                .invariant_factors()
                .iter()
                .map(|d| {
                    d.to_u64()
                        .expect("invariant factors of field profiles fit in u64")
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitRecord {
    /// `ε = (x + y√d) / 2`, coordinates as decimal strings.
    pub x: String,
    pub y: String,
    pub norm: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRecord {
    pub compact: Vec<GroupRecord>,
    pub open: Vec<GroupRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaRecord {
    pub order: u32,
    pub leading: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub field: String,
    pub r1: u32,
    pub r2: u32,
    pub h: u64,
    pub w: u64,
    pub regulator: f64,
    pub unit: Option<UnitRecord>,
    pub cohomology: CohomologyRecord,
    pub chi: f64,
    pub zeta_star: ZetaRecord,
    pub ratio: f64,
    pub convention: String,
    pub verdict: String,
    pub elapsed_ms: f64,
}

impl From<&VerificationReport> for ReportRecord {
    fn from(r: &VerificationReport) -> Self {
        let inv = &r.invariants;
        Self {
            field: inv.field.to_string(),
            r1: inv.r1,
            r2: inv.r2,
            h: inv.h,
            w: inv.w,
            regulator: inv.regulator,
            unit: inv.fundamental_unit.as_ref().map(|u| UnitRecord {
                x: u.x.to_string(),
                y: u.y.to_string(),
                norm: u.norm,
            }),
            cohomology: CohomologyRecord {
                compact: r.profile.compact.iter().map(GroupRecord::from).collect(),
                open: r.profile.open.iter().map(GroupRecord::from).collect(),
            },
            chi: r.chi,
            zeta_star: ZetaRecord {
                order: r.zeta_star.order,
                leading: r.zeta_star.leading,
            },
            ratio: r.ratio,
            convention: r.convention.label().to_string(),
            verdict: r.verdict.as_str().to_string(),
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}
