use crate::model::{Declaration, Profile, Valuation};

/// Collapses one general declaration to a single bid on a maximum-value set,
/// preferring smaller sets. A maximal-value set that is not itself an atom
/// strictly contains one, so the choice is always among the atoms.
pub fn simplify_one(valuation: &Valuation) -> Declaration {
    let best = valuation.max_value();
    valuation
        .atoms()
        .iter()
        .filter(|&&(_, v)| v == best)
        .map(|&(s, _)| s)
        .min()
        .map_or(Declaration::Empty, |set| Declaration::bid(set, best))
}

pub fn simplify(valuations: &[Valuation]) -> Profile {
    valuations.iter().map(simplify_one).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Bundle, Value};

    fn b(items: &[u32]) -> Bundle {
        Bundle::from_items(items.iter().copied())
    }

    #[test]
    fn picks_max_atom() {
        let v = Valuation::new([(b(&[0, 1]), Value(4)), (b(&[3]), Value(6))]);
        assert_eq!(simplify_one(&v), Declaration::bid(b(&[3]), Value(6)));
    }

    #[test]
    fn zero_valuation_is_empty() {
        assert_eq!(simplify_one(&Valuation::zero()), Declaration::Empty);
    }

    #[test]
    fn ties_prefer_smaller_set() {
        let v = Valuation::new([(b(&[0, 1]), Value(5)), (b(&[2]), Value(5))]);
        assert_eq!(simplify_one(&v), Declaration::bid(b(&[2]), Value(5)));
    }

    #[test]
    fn single_minded_passes_through() {
        let d = Declaration::bid(b(&[1, 2]), Value(9));
        assert_eq!(simplify(&[d.to_valuation()]).declarations(), &[d]);
    }
}
