use proptest::prelude::*;

use subtope_core::closedform::{canonical_intervals, closed_form_xbar, componentwise_xbar};
use subtope_core::cycles::{distinguished_cycle, seeded_cycle};
use subtope_core::decomp::{parse_terms, reconstruct, xbar_of_subtope, xbar_of_tope, Decomposition};
use subtope_core::{Subtope, Tope};

fn even_t() -> impl Strategy<Value = usize> {
    (1usize..=7).prop_map(|h| 2 * h)
}

fn negative_part(t: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(1..=t, 1..=t).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #[test]
    fn antipodal_topes_negate_coefficients(t in even_t(), seed in any::<u64>(), bits in any::<u64>()) {
        let d = seeded_cycle(t, seed).unwrap();
        let a: Vec<usize> = (1..=t).filter(|e| bits >> (e - 1) & 1 == 1).collect();
        let tope = Tope::from_negative_part(&a, t).unwrap();
        let x = xbar_of_tope(&tope, &d).unwrap();
        let y = xbar_of_tope(&tope.negate(), &d).unwrap();
        let neg: Vec<i64> = x.as_slice().iter().map(|v| -v).collect();
        prop_assert_eq!(y.as_slice(), &neg[..]);
    }

    #[test]
    fn tope_reconstruction_on_random_cycles(t in even_t(), seed in any::<u64>(), bits in any::<u64>()) {
        let d = seeded_cycle(t, seed).unwrap();
        let a: Vec<usize> = (1..=t).filter(|e| bits >> (e - 1) & 1 == 1).collect();
        let tope = Tope::from_negative_part(&a, t).unwrap();
        let x = xbar_of_tope(&tope, &d).unwrap();
        prop_assert!(x.as_slice().iter().all(|v| v % 2 != 0 && v.abs() < t as i64));
        let dec = Decomposition::from_coeffs(tope.vector().clone(), &x);
        prop_assert_eq!(reconstruct(&dec, &d.subtopes()).unwrap(), tope.to_ints());
    }

    #[test]
    fn subtope_reconstruction_after_render(t in even_t(), seed in any::<u64>(), bits in any::<u64>(), z in 0usize..14) {
        let d = seeded_cycle(t, seed).unwrap();
        let mut v: Vec<i64> = (0..t).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
        v[z % t] = 0;
        let s = Subtope::new(subtope_core::SignVector::from_ints(&v).unwrap()).unwrap();
        let x = xbar_of_subtope(&s, &d).unwrap();
        let dec = Decomposition::from_coeffs(s.vector().clone(), &x);
        let reparsed = Decomposition { target: dec.target.clone(), terms: parse_terms(&dec.render()).unwrap() };
        prop_assert_eq!(reconstruct(&reparsed, &d.subtopes()).unwrap(), v);
    }

    #[test]
    fn closed_form_matches_solve(t in even_t(), a in even_t().prop_flat_map(negative_part)) {
        let t = t.max(a.iter().copied().max().unwrap_or(1).next_multiple_of(2));
        let set = canonical_intervals(&a, t).unwrap();
        let closed = closed_form_xbar(&set).unwrap();
        let tope = Tope::from_negative_part(&a, t).unwrap();
        prop_assert_eq!(&closed, &xbar_of_tope(&tope, &distinguished_cycle(t).unwrap()).unwrap());
        for e in 1..=t {
            prop_assert_eq!(componentwise_xbar(&set, e).unwrap(), closed.as_slice()[e - 1]);
        }
    }
}
