use std::fmt;
use std::str::FromStr;

use super::{
    default_precision, draw_deg5_partition, draw_degree5, draw_outdeg3_partition, draw_outdeg4_partition,
    draw_two_covering, names, with_escalation, ConstructError, Drawing,
};
use crate::geometry::ConstructionFrame;
use crate::tree::{BoundMode, DecompositionKind, Instance, Part, RootedTree};

/// Highest precision the escalation loop will try.
pub const PRECISION_CEILING: u32 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Degree5,
    Part5,
    Part4,
    Part3,
    Cover2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Degree5, Algorithm::Part5, Algorithm::Part4, Algorithm::Part3, Algorithm::Cover2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Degree5 => names::DEGREE5,
            Algorithm::Part5 => names::PART5,
            Algorithm::Part4 => names::PART4,
            Algorithm::Part3 => names::PART3,
            Algorithm::Cover2 => names::COVER2,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| format!("unknown construction `{s}`"))
    }
}

fn rooted(inst: &Instance) -> Result<RootedTree, ConstructError> {
    let root = inst.root.ok_or_else(|| ConstructError::WrongInput("a root".into()))?;
    Ok(RootedTree::new(inst.tree.clone(), root)?)
}

fn expect(inst: &Instance, kind: DecompositionKind, mode: BoundMode) -> Result<(), ConstructError> {
    let dec = inst.decomposition.as_ref().ok_or_else(|| ConstructError::WrongInput("a decomposition".into()))?;
    if dec.kind != kind {
        return Err(ConstructError::WrongInput(format!("a {kind:?} decomposition").to_lowercase()));
    }
    if let Some(b) = inst.bound {
        if b.mode != mode {
            return Err(ConstructError::WrongInput(match mode {
                BoundMode::Degree => "a degree bound".into(),
                BoundMode::Outdegree => "an outdegree bound".into(),
            }));
        }
    }
    Ok(())
}

/// Picks a starting precision from the instance's shape.
pub fn starting_precision(algo: Algorithm, inst: &Instance) -> u32 {
    let tree = &inst.tree;
    let centre = inst.root.unwrap_or_else(|| tree.max_degree_vertex());
    let height = tree.eccentricity(centre);
    let slots = match algo {
        Algorithm::Part4 | Algorithm::Part3 => {
            RootedTree::new(tree.clone(), centre).map_or(tree.max_degree(), |r| r.max_outdegree())
        }
        _ => 5,
    };
    default_precision(height, slots)
}

/// Runs `algo` on `inst`, starting at `prec` bits (or an estimate from the
/// instance) and raising the precision when coordinates run out of bits.
pub fn draw_instance(algo: Algorithm, inst: &Instance, prec: Option<u32>) -> Result<Drawing, ConstructError> {
    inst.validate()?;
    let start = prec.unwrap_or_else(|| starting_precision(algo, inst)).max(crate::MIN_PRECISION);
    let ceiling = PRECISION_CEILING.max(start);
    match algo {
        Algorithm::Degree5 => with_escalation(start, ceiling, |p| draw_degree5(&inst.tree, p)),
        Algorithm::Part5 => {
            expect(inst, DecompositionKind::Partition, BoundMode::Degree)?;
            let dec = inst.decomposition.as_ref().unwrap();
            let start_vertex = inst.root.unwrap_or_else(|| inst.tree.max_degree_vertex());
            with_escalation(start, ceiling, |p| draw_deg5_partition(&inst.tree, dec, start_vertex, p))
        }
        Algorithm::Part4 | Algorithm::Part3 => {
            expect(inst, DecompositionKind::Partition, BoundMode::Outdegree)?;
            let dec = inst.decomposition.as_ref().unwrap();
            let rooted = rooted(inst)?;
            with_escalation(start, ceiling, |p| {
                let frame = ConstructionFrame::standard(p);
                if algo == Algorithm::Part4 {
                    draw_outdeg4_partition(&rooted, dec, &frame)
                } else {
                    draw_outdeg3_partition(&rooted, dec, &frame)
                }
            })
        }
        Algorithm::Cover2 => {
            expect(inst, DecompositionKind::Covering, BoundMode::Degree)?;
            let parts = &inst.decomposition.as_ref().unwrap().parts;
            let (t1, t2) = match parts.as_slice() {
                [t1] => (t1.clone(), Part::default()),
                [t1, t2] => (t1.clone(), t2.clone()),
                _ => return Err(ConstructError::WrongInput("a covering by at most two subtrees".into())),
            };
            with_escalation(start, ceiling, |p| draw_two_covering(&inst.tree, &t1, &t2, p))
        }
    }
}
