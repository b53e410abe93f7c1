use proptest::prelude::*;

use super::*;

#[test]
fn prime_field_has_no_modulus() {
    let f = field_make(3, 1).unwrap();
    assert_eq!(f.order(), 3);
    assert!(f.modulus().is_none());
}

#[test]
fn lexicographic_moduli() {
    // Oracle: brute-force the first monic polynomial without roots / factors by
    // multiplying out all products of lower-degree monics.
    fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
        let monics = |d: usize| -> Vec<Vec<u64>> {
            (0..p.pow(d as u32))
                .map(|mut c| {
                    let mut v: Vec<u64> = (0..d)
                        .map(|_| {
                            let r = c % p;
                            c /= p;
                            r
                        })
                        .collect();
                    v.push(1);
                    v
                })
                .collect()
        };
        let mul = |a: &[u64], b: &[u64]| {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = (out[i + j] + x * y) % p;
                }
            }
            out
        };
        let mut reducible = std::collections::HashSet::new();
        for d in 1..k {
            for a in monics(d) {
                for b in monics(k - d) {
                    reducible.insert(mul(&a, &b));
                }
            }
        }
        monics(k).into_iter().find(|m| !reducible.contains(m)).unwrap()
    }
    for (p, k) in [(3u64, 2usize), (2, 4), (2, 3), (5, 2), (3, 3), (2, 6)] {
        let f = field_make(p, k).unwrap();
        assert_eq!(f.modulus().unwrap(), first_irreducible(p, k).as_slice(), "p={p} k={k}");
    }
    assert_eq!(field_make(3, 2).unwrap().modulus().unwrap(), &[1, 0, 1]);
    assert_eq!(field_make(2, 4).unwrap().modulus().unwrap(), &[1, 1, 0, 0, 1]);
}

#[test]
fn field_make_errors() {
    assert_eq!(field_make(9, 1).unwrap_err(), ArithError::NotPrime(9));
    assert!(matches!(field_make(2, 41), Err(ArithError::BudgetExceeded { .. })));
    assert!(field_make(2, 40).is_ok());
}

#[test]
fn frobenius_examples() {
    let f3 = field_make(3, 1).unwrap();
    let x = f3.from_u64(2);
    assert_eq!(frobenius(&f3, &x, 5), x);

    let f9 = field_make(3, 2).unwrap();
    let t = f9.generator().unwrap();
    assert_eq!(f9.mul(&t, &t), f9.from_i64(-1));
    assert_eq!(frobenius(&f9, &t, 1), f9.scale(&t, 2));
    for x in f9.elements() {
        assert_eq!(frobenius(&f9, &x, 2), x);
    }
}

#[test]
fn embedding_is_a_ring_map() {
    let small = field_make(2, 2).unwrap();
    let large = field_make(2, 6).unwrap();
    let e = Embedding::new(&small, &large).unwrap();
    for a in small.elements() {
        for b in small.elements() {
            assert_eq!(e.map(&small.mul(&a, &b)), large.mul(&e.map(&a), &e.map(&b)));
            assert_eq!(e.map(&small.add(&a, &b)), large.add(&e.map(&a), &e.map(&b)));
        }
    }
    assert!(Embedding::new(&field_make(2, 4).unwrap(), &large).is_err());
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just((2u64, 1usize)),
        Just((2, 5)),
        Just((3, 3)),
        Just((5, 2)),
        Just((7, 1)),
        Just((101, 2)),
        Just((65_521, 1)),
    ]
    .prop_map(|(p, k)| field_make(p, k).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let a = f.from_index(a % f.order());
        let b = f.from_index(b % f.order());
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(&a, f.order()), a.clone());
        prop_assert_eq!(
            frobenius(&f, &f.mul(&a, &b), 1),
            f.mul(&frobenius(&f, &a, 1), &frobenius(&f, &b, 1))
        );
    }

    #[test]
    fn truncated_power_agrees_below_cap(
        coeffs in proptest::collection::vec(0i64..7, 1..6),
        e in 0u64..9,
        dmax in 0usize..12,
    ) {
        let f = field_make(7, 1).unwrap();
        let h = Poly::from_ints(&f, &coeffs);
        let full = poly_pow(&f, &h, e, None);
        let capped = poly_pow(&f, &h, e, Some(dmax));
        for i in 0..=dmax {
            prop_assert_eq!(full.coeff(i), capped.coeff(i));
        }
        prop_assert!(capped.degree().is_none_or(|d| d <= dmax));
    }
}

#[test]
fn field_make_is_deterministic() {
    for (p, k) in [(3, 4), (7, 3), (2, 10)] {
        assert_eq!(field_make(p, k).unwrap(), field_make(p, k).unwrap());
    }
}
