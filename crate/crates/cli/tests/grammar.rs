use branchmod::exact::{rat, BivariatePoly};
use branchmod::saito::OneForm;
use branchmod_cli::parse::{parse_form, parse_poly};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = BivariatePoly> {
    proptest::collection::vec(((0u32..8, 0u32..8), -20i64..=20, 1i64..=9), 0..6)
        .prop_map(|terms| BivariatePoly::from_terms(terms.into_iter().map(|(k, n, d)| (k, rat(n, d)))))
}

proptest! {
    #[test]
    fn printed_polynomials_parse_back(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn printed_forms_parse_back(a in poly(), b in poly()) {
        let w = OneForm::new(a, b);
        prop_assert_eq!(parse_form(&w.to_string()).unwrap(), w);
    }
}
