use crate::algorithms::ceil_sqrt;
use crate::model::{Bundle, Declaration, Profile, Valuation, Value};

/// Which declarations compete with each other for the separation test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationScope {
    /// Every pair of intersecting declarations.
    All,
    /// Only declarations of at most `cap` items take part.
    Capped(u32),
    /// Small sets (at most `⌈√m⌉` items) compete only with small sets and
    /// bids for all of `M` only with each other; other sizes take no part.
    CaCopies { items: u32 },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Copy_ {
    Out,
    Small,
    Big,
}

impl SeparationScope {
    fn copy_of(self, set: Bundle) -> Copy_ {
        if set.is_empty() {
            return Copy_::Out;
        }
        match self {
            SeparationScope::All => Copy_::Small,
            SeparationScope::Capped(s) if set.len() <= s => Copy_::Small,
            SeparationScope::Capped(_) => Copy_::Out,
            SeparationScope::CaCopies { items } => {
                if set == Bundle::full(items) {
                    Copy_::Big
                } else if set.len() <= ceil_sqrt(items) {
                    Copy_::Small
                } else {
                    Copy_::Out
                }
            }
        }
    }

    /// Whether `set` takes part in the competition at all.
    pub fn participates(self, set: Bundle) -> bool {
        self.copy_of(set) != Copy_::Out
    }

    /// Whether declarations for `a` and `b` compete.
    pub fn competes(self, a: Bundle, b: Bundle) -> bool {
        let ca = self.copy_of(a);
        ca != Copy_::Out && ca == self.copy_of(b) && a.intersects(b)
    }
}

/// Separation for one agent: with `R_i` the other declarations competing
/// with `S_i` and `Q_i ⊆ R_i` those bidding below `own_value`,
/// `Σ_{Q_i} d_j ≤ d_i(S_i)`. Empty declarations are vacuously separated.
pub fn separated_for(
    profile: &Profile,
    agent: usize,
    own_value: Value,
    scope: SeparationScope,
) -> bool {
    let own = profile[agent];
    let Declaration::SingleMinded { set, bid } = own else {
        return true;
    };
    if !scope.participates(set) {
        return true;
    }
    let below: Value = profile
        .iter()
        .enumerate()
        .filter(|&(j, d)| j != agent && scope.competes(set, d.set()) && d.amount() < own_value)
        .map(|(_, d)| d.amount())
        .sum();
    below <= bid
}

/// Per-agent separation with `Q_i` measured against the true value
/// `t_i(S_i)`, every intersecting declaration competing.
pub fn separated_check(profile: &Profile, types: &[Valuation]) -> Vec<bool> {
    separated_in_scope(profile, types, SeparationScope::All)
}

pub fn separated_in_scope(
    profile: &Profile,
    types: &[Valuation],
    scope: SeparationScope,
) -> Vec<bool> {
    (0..profile.len())
        .map(|i| separated_for(profile, i, types[i].value_of(profile[i].set()), scope))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Bundle {
        Bundle::from_items([0])
    }

    fn truthful(decls: &[Declaration]) -> Vec<Valuation> {
        decls.iter().map(Declaration::to_valuation).collect()
    }

    #[test]
    fn empty_profile_is_separated() {
        let p = Profile::empty(3);
        assert_eq!(separated_check(&p, &vec![Valuation::zero(); 3]), vec![true; 3]);
    }

    #[test]
    fn two_bidders_on_one_item() {
        let d = [Declaration::bid(a(), Value(5)), Declaration::bid(a(), Value(3))];
        let p = Profile::new(d.to_vec());
        assert_eq!(separated_check(&p, &truthful(&d)), vec![true, true]);
    }

    #[test]
    fn weak_inequality_boundary() {
        let mut d = vec![
            Declaration::bid(a(), Value(2)),
            Declaration::bid(a(), Value(1)),
            Declaration::bid(a(), Value(1)),
        ];
        let p = Profile::new(d.clone());
        assert!(separated_check(&p, &truthful(&d))[0]);

        d.push(Declaration::bid(a(), Value(1)));
        let p = Profile::new(d.clone());
        assert!(!separated_check(&p, &truthful(&d))[0]);
    }

    #[test]
    fn ca_copies_keep_big_and_small_apart() {
        let m = 4;
        let full = Bundle::full(m);
        let d = vec![
            Declaration::bid(full, Value(10)),
            Declaration::bid(a(), Value(6)),
            Declaration::bid(a(), Value(5)),
        ];
        let p = Profile::new(d.clone());
        let types = truthful(&d);
        assert_eq!(separated_check(&p, &types), vec![false, true, true]);
        assert_eq!(
            separated_in_scope(&p, &types, SeparationScope::CaCopies { items: m }),
            vec![true, true, true]
        );
    }
}
