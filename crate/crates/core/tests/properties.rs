use proptest::prelude::*;

use sumprod_lab::energy::{energy, identity_check, EnergyKind};
use sumprod_lab::ff::{make_field, Field};
use sumprod_lab::oracle::{energy_brute, product_set_brute, OracleBudget};
use sumprod_lab::setops::{dilate, product_set, shift, sum_set, ESet};

const FIELDS: [(u64, u32); 6] = [(2, 3), (5, 1), (3, 2), (13, 1), (2, 5), (31, 1)];

fn field_and_sets(n: usize) -> impl Strategy<Value = (Field, Vec<ESet>)> {
    (0..FIELDS.len()).prop_flat_map(move |i| {
        let (p, m) = FIELDS[i];
        let q = p.pow(m);
        proptest::collection::vec(
            proptest::collection::btree_set(0..q, 1..=(q as usize).min(9)),
            n,
        )
        .prop_map(move |sets| {
            let f = make_field(p, m).unwrap();
            let sets = sets
                .into_iter()
                .map(|s| ESet::from_codes(f.clone(), s).unwrap())
                .collect();
            (f, sets)
        })
    })
}

proptest! {
    #[test]
    fn product_set_matches_oracle((_f, s) in field_and_sets(2)) {
        let fast = product_set(&s[0], &s[1]).unwrap();
        prop_assert_eq!(fast.elems().to_vec(), product_set_brute(&s[0], &s[1]).unwrap());
        prop_assert_eq!(fast, product_set(&s[1], &s[0]).unwrap());
    }

    #[test]
    fn set_operations_associate((_f, s) in field_and_sets(3)) {
        let l = product_set(&product_set(&s[0], &s[1]).unwrap(), &s[2]).unwrap();
        let r = product_set(&s[0], &product_set(&s[1], &s[2]).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let l = sum_set(&sum_set(&s[0], &s[1]).unwrap(), &s[2]).unwrap();
        let r = sum_set(&s[0], &sum_set(&s[1], &s[2]).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn energies_match_oracle((_f, s) in field_and_sets(2), mult in any::<bool>()) {
        let kind = if mult { EnergyKind::Multiplicative } else { EnergyKind::Additive };
        let r = energy(&s[0], &s[1], kind).unwrap();
        prop_assert_eq!(r.value, energy_brute(&s[0], &s[1], kind, &OracleBudget::default()).unwrap());
        let total: u64 = r.histogram.iter().map(|h| h.1).sum();
        prop_assert_eq!(total, (s[0].len() * s[1].len()) as u64);
        prop_assert_eq!(r.histogram.iter().map(|h| h.1 * h.1).sum::<u64>(), r.value);
    }

    #[test]
    fn energy_is_dilation_and_shift_invariant((f, s) in field_and_sets(1), code in 1u64..32) {
        let a = &s[0];
        let alpha = f.elem(code % (f.q() - 1) + 1).unwrap();
        let e = energy(a, a, EnergyKind::Additive).unwrap().value;
        prop_assert_eq!(energy(&dilate(a, alpha).unwrap(), &dilate(a, alpha).unwrap(), EnergyKind::Additive).unwrap().value, e);
        prop_assert_eq!(energy(&shift(a, alpha), &shift(a, alpha), EnergyKind::Additive).unwrap().value, e);
        let em = energy(a, a, EnergyKind::Multiplicative).unwrap().value;
        prop_assert_eq!(energy(&dilate(a, alpha).unwrap(), &dilate(a, alpha).unwrap(), EnergyKind::Multiplicative).unwrap().value, em);
    }

    #[test]
    fn identity_always_holds(i in 0..FIELDS.len(), seed in any::<[u64; 6]>()) {
        let (p, m) = FIELDS[i];
        let f = make_field(p, m).unwrap();
        let q = f.q();
        prop_assume!(q >= 3);
        let a1 = seed[0] % q;
        let a2 = (a1 + 1 + seed[1] % (q - 1)) % q;
        let a3 = seed[2] % q;
        prop_assume!(a3 != a1 && a3 != a2);
        let e = |c: u64| f.elem(c).unwrap();
        let c = e(1 + seed[3] % (q - 1));
        let d = e(1 + seed[4] % (q - 1));
        prop_assert!(identity_check(&f, [e(a1), e(a2), e(a3)], c, e(seed[5] % q), d).unwrap());
    }
}
