use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::exact::GradedZModule;

use super::HomologyError;

/// Summand of the splitting `A = I_- ⊕ A_0 ⊕ I_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "+")]
    Plus,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Minus, Component::Zero, Component::Plus];

    pub fn symbol(self) -> &'static str {
        match self {
            Component::Minus => "-",
            Component::Zero => "0",
            Component::Plus => "+",
        }
    }

    pub fn parse(s: &str) -> Option<Component> {
        match s {
            "-" => Some(Component::Minus),
            "0" => Some(Component::Zero),
            "+" => Some(Component::Plus),
            _ => None,
        }
    }
}

/// Products that a fiber-product ring structure permits.
pub fn allowed_triples() -> BTreeSet<(Component, Component, Component)> {
    use Component::*;
    [
        (Zero, Zero, Zero),
        (Minus, Minus, Minus),
        (Minus, Zero, Minus),
        (Zero, Minus, Minus),
        (Plus, Plus, Plus),
        (Plus, Zero, Plus),
        (Zero, Plus, Plus),
    ]
    .into_iter()
    .collect()
}

pub fn all_triples() -> Vec<(Component, Component, Component)> {
    let mut v = Vec::new();
    for a in Component::ALL {
        for b in Component::ALL {
            for c in Component::ALL {
                v.push((a, b, c));
            }
        }
    }
    v
}

/// Admissibility derived from the ring axioms rather than read off the list:
/// `I_±` are ideals, `A_± = I_± ⊕ A_0` are subrings, and `I_- ∩ I_+ = 0`.
pub fn triple_admissible(a: Component, b: Component, c: Component) -> bool {
    use Component::*;
    let ideal_target = |x: Component| matches!(x, Minus | Plus).then_some(x);
    // Ideal property: a product with a factor in I_± lands in I_±.
    let mut required: Vec<Component> = [a, b].into_iter().filter_map(ideal_target).collect();
    required.dedup();
    match required.len() {
        // Landing in both I_- and I_+ means landing in zero: no nonzero product possible.
        2 => false,
        1 => c == required[0],
        // Both factors lie in A_- ∩ A_+, a product of subrings, hence in A_0.
        _ => c == Zero,
    }
}

/// Rank data of the splitting, per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SplittingRanks {
    pub total: GradedZModule,
    pub minus_ideal: GradedZModule,
    pub zero_part: GradedZModule,
    pub plus_ideal: GradedZModule,
    pub minus_subring: GradedZModule,
    pub plus_subring: GradedZModule,
}

/// A nonzero structure constant: some product of an `a`-element and a `b`-element
/// has a nonzero `c`-component of the given rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub a: Component,
    pub b: Component,
    pub c: Component,
    pub rank: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProductTable {
    pub entries: Vec<ProductEntry>,
    pub ranks: Option<SplittingRanks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub accepted: Vec<ProductEntry>,
    pub violations: Vec<ProductEntry>,
    pub axioms: Vec<AxiomCheck>,
    pub pass: bool,
}

fn degrees_of(tables: &[&GradedZModule]) -> BTreeSet<i64> {
    tables.iter().flat_map(|t| t.support()).collect()
}

fn rank_axioms(r: &SplittingRanks) -> Vec<AxiomCheck> {
    let degs = degrees_of(&[&r.total, &r.minus_ideal, &r.zero_part, &r.plus_ideal, &r.minus_subring, &r.plus_subring]);
    let all = |f: &dyn Fn(i64) -> bool| degs.iter().all(|&d| f(d));
    vec![
        AxiomCheck {
            name: "ideals meet trivially: rank A = rank I- + rank A0 + rank I+".into(),
            pass: all(&|d| r.total.free_rank(d) == r.minus_ideal.free_rank(d) + r.zero_part.free_rank(d) + r.plus_ideal.free_rank(d)),
        },
        AxiomCheck {
            name: "A-/I- has the rank of A0".into(),
            pass: all(&|d| r.minus_subring.free_rank(d) == r.minus_ideal.free_rank(d) + r.zero_part.free_rank(d)),
        },
        AxiomCheck {
            name: "A+/I+ has the rank of A0".into(),
            pass: all(&|d| r.plus_subring.free_rank(d) == r.plus_ideal.free_rank(d) + r.zero_part.free_rank(d)),
        },
    ]
}

/// Flags every nonzero structure constant outside the admissible set and checks the
/// fiber-product axioms on the rank data, when supplied.
pub fn product_admissibility(table: &ProductTable) -> Result<AdmissibilityReport, HomologyError> {
    let mut seen = BTreeSet::new();
    for e in &table.entries {
        if !seen.insert((e.a, e.b, e.c)) {
            return Err(HomologyError::MalformedTable(format!(
                "duplicate entry ({}, {}) -> {}",
                e.a.symbol(),
                e.b.symbol(),
                e.c.symbol()
            )));
        }
    }
    let (accepted, violations): (Vec<ProductEntry>, Vec<ProductEntry>) = table
        .entries
        .iter()
        .filter(|e| e.rank > 0)
        .cloned()
        .partition(|e| triple_admissible(e.a, e.b, e.c));
    let axioms = table.ranks.as_ref().map(rank_axioms).unwrap_or_default();
    let pass = violations.is_empty() && axioms.iter().all(|a| a.pass);
    Ok(AdmissibilityReport { accepted, violations, axioms, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ZModule;

    #[test]
    fn axioms_reproduce_the_allowed_list() {
        let derived: BTreeSet<_> = all_triples().into_iter().filter(|&(a, b, c)| triple_admissible(a, b, c)).collect();
        assert_eq!(derived, allowed_triples());
        assert_eq!(all_triples().len() - derived.len(), 20);
    }

    #[test]
    fn violations_are_flagged() {
        use Component::*;
        let t = ProductTable {
            entries: vec![
                ProductEntry { a: Plus, b: Minus, c: Zero, rank: 1 },
                ProductEntry { a: Zero, b: Zero, c: Zero, rank: 2 },
                ProductEntry { a: Plus, b: Zero, c: Minus, rank: 0 },
            ],
            ranks: None,
        };
        let r = product_admissibility(&t).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.accepted.len(), 1);
        assert!(!r.pass);
        let dup = ProductTable { entries: vec![t.entries[1].clone(), t.entries[1].clone()], ranks: None };
        assert!(matches!(product_admissibility(&dup), Err(HomologyError::MalformedTable(_))));
    }

    #[test]
    fn rank_axioms_detect_inconsistency() {
        let g = |n| GradedZModule::from_modules([(0, ZModule::free(n))]);
        let good = SplittingRanks {
            total: g(6),
            minus_ideal: g(2),
            zero_part: g(1),
            plus_ideal: g(3),
            minus_subring: g(3),
            plus_subring: g(4),
        };
        assert!(rank_axioms(&good).iter().all(|a| a.pass));
        let bad = SplittingRanks { total: g(7), ..good };
        assert!(!rank_axioms(&bad)[0].pass);
    }
}
