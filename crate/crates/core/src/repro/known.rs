//! The closed register of expected disagreements. A diff whose key is not
//! listed here fails the run, and so does a listed key that stops firing.

const REGISTER: &[(&str, &str)] = &[
    ("lin2-x55", "fixture-outside g2"),
    ("lin2-x55", "fixture-outside g5"),
    ("lin2-x55", "computed-missing (1,-3,-1,0,0,0,-1,0,0,0,0)"),
    ("appendix-x423", "fixture-outside α4"),
    ("appendix-x423", "fixture-outside α6"),
    ("appendix-x423", "fixture-outside α9"),
    ("appendix-x423", "computed-missing (1,0,0,0,0,-1,0,0)"),
    ("appendix-x423", "computed-missing (2,-2,-1,-1,0,-1,0,0)"),
    ("appendix-x423", "computed-missing (2,-1,0,0,0,-1,-1,0)"),
    ("appendix-x423", "computed-missing (3,-3,-3,-1,-1,-1,0,0)"),
    ("appendix-x423", "computed-missing (3,-3,-2,-1,0,-1,-1,0)"),
    ("appendix-x423", "computed-missing (3,-3,0,-1,0,-1,-1,-1)"),
    ("appendix-x423", "computed-missing (3,-2,-2,-1,0,-1,-1,-1)"),
    ("appendix-x423", "computed-missing (3,-2,-2,-1,0,-1,-1,0)"),
    ("appendix-x423", "computed-missing (3,-2,-2,0,0,-1,-1,-1)"),
    ("appendix-x423", "computed-missing (3,-2,0,-1,0,-1,-1,-1)"),
    ("appendix-x423", "computed-missing (3,-2,0,0,0,-1,-1,-1)"),
    ("appendix-x423", "computed-missing (4,-4,-4,-1,-1,-1,-1,0)"),
    ("decomp-alpha9", "sum"),
    ("decomp-alpha9", "in the dual cone"),
    ("curves-p4", "r=5 literal"),
    ("curves-p4", "r=6 literal"),
    ("curves-p4", "r=7 literal"),
    ("curves-p5", "r=4 literal"),
    ("curves-p5", "r=5 literal"),
    ("curves-p5", "r=6 literal"),
    ("divisors-p4", "r=4 literal"),
    ("divisors-p4", "r=5 literal"),
    ("expected-codim", "vertex-term k=2 N=4 n=5"),
];

pub fn is_known(table: &str, key: &str) -> bool {
    REGISTER.iter().any(|&(t, k)| t == table && k == key)
}

pub fn registered(table: &str) -> impl Iterator<Item = &'static str> + '_ {
    REGISTER.iter().filter(move |(t, _)| *t == table).map(|&(_, k)| k)
}

/// Every registered `(table, key)` pair.
pub fn register() -> &'static [(&'static str, &'static str)] {
    REGISTER
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repro::TABLE_IDS;

    #[test]
    fn register_names_real_tables_once() {
        for (i, (t, k)) in REGISTER.iter().enumerate() {
            assert!(TABLE_IDS.contains(t), "{t}");
            assert!(!REGISTER[..i].contains(&(t, k)), "{t} {k}");
        }
        assert!(is_known("lin2-x55", "fixture-outside g2"));
        assert!(!is_known("lin2-x44", "fixture-outside g2"));
    }
}
