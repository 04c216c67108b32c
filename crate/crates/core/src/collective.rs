//! Collective comparison of subsets of a valued ground set.
//!
//! For every distinct valuation level `t`, `γ_t(M)` counts the members of `M`
//! valued at least `t`. `M R_h N` holds when some level count of `M` is
//! strictly below that of `N`; since each `γ_t` induces a linear order, the
//! altiset of a family of subsets can be taken through the quotient of the
//! order system `{<_{γ_t}}`.

use ordered_float::NotNan;

use crate::error::{Error, Result};
use crate::induced::{KeyedOrder, OrderSystem};
use crate::relation::{ElementSet, FiniteRelation, Universe};

/// A finite ground set `X` with a gain valuation `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuedGroundSet {
    elements: Vec<String>,
    values: Vec<NotNan<f64>>,
    thresholds: Vec<NotNan<f64>>,
}

impl ValuedGroundSet {
    pub fn new(elements: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if elements.len() != values.len() {
            return Err(Error::Dimension { expected: elements.len(), found: values.len() });
        }
        // label uniqueness
        Universe::with_labels(elements.clone())?;
        let values = values
            .into_iter()
            .zip(&elements)
            .map(|(v, e)| {
                NotNan::new(v).map_err(|_| Error::Argument(format!("valuation of {e:?} is NaN")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut thresholds = values.clone();
        thresholds.sort_by(|a, b| b.cmp(a));
        thresholds.dedup();
        Ok(ValuedGroundSet { elements, values, thresholds })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn value(&self, element: usize) -> f64 {
        self.values[element].into_inner()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Distinct valuation levels, descending.
    pub fn thresholds(&self) -> Vec<f64> {
        self.thresholds.iter().map(|t| t.into_inner()).collect()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::Membership { element: name.to_string() })
    }

    fn check_subset(&self, subset: &ElementSet) -> Result<()> {
        match subset.iter().next_back() {
            Some(&m) if m >= self.len() => Err(Error::Membership { element: format!("#{m}") }),
            _ => Ok(()),
        }
    }

    /// `γ_t(M)` for every level `t`, in descending order of `t`.
    pub fn threshold_profile(&self, subset: &ElementSet) -> Result<Vec<usize>> {
        self.check_subset(subset)?;
        Ok(self
            .thresholds
            .iter()
            .map(|t| subset.iter().filter(|&&m| self.values[m] >= *t).count())
            .collect())
    }

    /// `M R_h N`: some level count of `M` is strictly below that of `N`.
    pub fn rh_dominates(&self, m: &ElementSet, n: &ElementSet) -> Result<bool> {
        let pm = self.threshold_profile(m)?;
        let pn = self.threshold_profile(n)?;
        Ok(pm.iter().zip(&pn).any(|(a, b)| a < b))
    }
}

/// A list of subsets of the ground set; duplicates are kept.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetFamily {
    ground: ValuedGroundSet,
    members: Vec<ElementSet>,
}

impl SubsetFamily {
    pub fn new(ground: ValuedGroundSet, members: Vec<ElementSet>) -> Result<Self> {
        for m in &members {
            ground.check_subset(m)?;
        }
        Ok(SubsetFamily { ground, members })
    }

    pub fn ground(&self) -> &ValuedGroundSet {
        &self.ground
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    fn profiles(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|m| self.ground.threshold_profile(m).expect("validated member"))
            .collect()
    }

    /// One gain order per valuation level, keyed by `γ_t`.
    pub fn order_system(&self) -> Result<OrderSystem<usize>> {
        let profiles = self.profiles();
        let levels = self.ground.thresholds.len();
        let mut orders: Vec<KeyedOrder<usize>> = (0..levels)
            .map(|t| KeyedOrder::gain(profiles.iter().map(|p| p[t]).collect()))
            .collect();
        if orders.is_empty() {
            // empty ground set: every member is the empty set
            orders.push(KeyedOrder::gain(vec![0; self.members.len()]));
        }
        OrderSystem::new(Universe::new(self.members.len()), orders)
    }

    /// The pairwise `R_h` relation between members.
    pub fn rh_relation(&self) -> FiniteRelation {
        let profiles = self.profiles();
        FiniteRelation::from_fn(Universe::new(self.members.len()), |k, l| {
            profiles[k].iter().zip(&profiles[l]).any(|(a, b)| a < b)
        })
    }
}

/// Indices of the `R_h`-significant members, via the order-system quotient.
pub fn collective_altiset(family: &SubsetFamily) -> Result<ElementSet> {
    if family.members.is_empty() {
        return Err(Error::Argument("subset family is empty".into()));
    }
    family.order_system()?.altiset(None)
}

/// Single-pass pairwise elimination of strictly dominated members.
///
/// Each surviving member `k` is compared against every later survivor `l`;
/// whichever is strictly dominated leaves the survivor list. Strict
/// `R_h`-domination is transitive, so every eliminated member is dominated
/// by a survivor and the survivors are exactly the altiset.
pub fn pairwise_elimination(family: &SubsetFamily) -> Result<ElementSet> {
    if family.members.is_empty() {
        return Err(Error::Argument("subset family is empty".into()));
    }
    let profiles = family.profiles();
    let below = |k: usize, l: usize| profiles[k].iter().zip(&profiles[l]).any(|(a, b)| a < b);
    let mut alive = vec![true; profiles.len()];
    for k in 0..profiles.len() {
        if !alive[k] {
            continue;
        }
        for l in k + 1..profiles.len() {
            if !alive[l] {
                continue;
            }
            let (k_up, l_up) = (below(k, l), below(l, k));
            if l_up && !k_up {
                alive[l] = false;
            } else if k_up && !l_up {
                alive[k] = false;
                break;
            }
        }
    }
    Ok((0..profiles.len()).filter(|&k| alive[k]).collect())
}
