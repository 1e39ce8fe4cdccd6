//! Finite-field layer: modulus selection, arithmetic axioms, square
//! classes, closed-form power sums (with brute-force oracles), and
//! subfield embeddings.

use cherednik_core::gf::{
    power_sum, smallest_nonsquare, square_class, squares_partition, Embedding, Field,
    PowerDomain,
};
use cherednik_core::gf::Fq;
use rand::{Rng, SeedableRng};

// ---------------------------------------------------------------------------
// modulus selection
// ---------------------------------------------------------------------------

#[test]
fn modulus_is_lex_smallest_irreducible() {
    // Frozen: first monic irreducible in (a_0, …, a_{r-1}) order.
    assert_eq!(Field::new(2, 2).unwrap().modulus_string(), "x^2+x+1");
    assert_eq!(Field::new(3, 2).unwrap().modulus_string(), "x^2+1");
    assert_eq!(Field::new(2, 3).unwrap().modulus_string(), "x^3+x^2+1");
    assert_eq!(Field::new(5, 2).unwrap().modulus_string(), "x^2+x+1");
    assert_eq!(Field::new(2, 4).unwrap().modulus_string(), "x^4+x^3+1");
}

#[test]
fn modulus_is_irreducible_by_exhaustion() {
    // Oracle: the chosen modulus has no roots in any proper way — check
    // directly that no monic factor of smaller degree divides it, by
    // testing that the field has no zero divisors (q - 1 invertibles).
    for (p, r) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let f = Field::new(p, r).unwrap();
        let q = f.q();
        let mut seen = vec![false; q as usize];
        for a in f.nonzero_elements() {
            let inv = a.inv();
            assert!((&a * &inv).is_one());
            seen[a.idx() as usize] = true;
        }
        assert!(seen[1..].iter().all(|&s| s));
    }
}

#[test]
fn prime_field_has_trivial_modulus() {
    let f = Field::new(7, 1).unwrap();
    assert_eq!(f.q(), 7);
    assert_eq!(f.from_i64(-1).idx(), 6);
    assert_eq!((&f.from_u64(3) * &f.from_u64(5)).idx(), 1);
}

// ---------------------------------------------------------------------------
// arithmetic axioms (exhaustive on small fields)
// ---------------------------------------------------------------------------

#[test]
fn field_axioms_exhaustive() {
    for (p, r) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let f = Field::new(p, r).unwrap();
        let els: Vec<Fq> = f.elements().collect();
        for a in &els {
            assert_eq!(&(a + &f.zero()), a);
            assert_eq!(&(a * &f.one()), a);
            assert!((a - a).is_zero());
            if !a.is_zero() {
                assert!((a * &a.inv()).is_one());
            }
            for b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &els {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }
}

#[test]
fn frobenius_is_additive() {
    // (a + b)^p = a^p + b^p distinguishes true field tables from ad hoc
    // ones.
    for (p, r) in [(2u64, 3u32), (3, 2), (5, 2)] {
        let f = Field::new(p, r).unwrap();
        let els: Vec<Fq> = f.elements().collect();
        for a in &els {
            for b in &els {
                assert_eq!((a + b).pow(p), &a.pow(p) + &b.pow(p));
            }
        }
    }
}

#[test]
fn generator_has_full_order() {
    for (p, r) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (5, 2), (7, 1), (13, 1)] {
        let f = Field::new(p, r).unwrap();
        let g = f.multiplicative_generator();
        let q = f.q();
        // Smallest index with full multiplicative order.
        let order_of = |a: &Fq| -> u64 {
            let mut x = a.clone();
            let mut k = 1;
            while !x.is_one() {
                x = &x * a;
                k += 1;
            }
            k
        };
        assert_eq!(order_of(&g), q - 1);
        for idx in 1..g.idx() {
            assert!(order_of(&f.element(idx)) < q - 1);
        }
    }
}

#[test]
fn pow_conventions() {
    let f = Field::new(3, 2).unwrap();
    assert!(f.zero().pow(0).is_one(), "0^0 = 1 by convention");
    assert!(f.zero().pow(5).is_zero());
    let g = f.multiplicative_generator();
    assert!(g.pow(f.q() - 1).is_one());
    assert_eq!(g.pow(3).pow(5), g.pow(15));
}

// ---------------------------------------------------------------------------
// squares / non-squares
// ---------------------------------------------------------------------------

#[test]
fn squares_partition_matches_brute_force() {
    for (p, r) in [(3u64, 1u32), (3, 2), (5, 1), (7, 1), (11, 1), (5, 2)] {
        let f = Field::new(p, r).unwrap();
        let part = squares_partition(&f);
        // Oracle: the set {y^2 : y nonzero}.
        let mut is_sq = vec![false; f.q() as usize];
        for y in f.nonzero_elements() {
            is_sq[(&y * &y).idx() as usize] = true;
        }
        for a in f.nonzero_elements() {
            assert_eq!(square_class(&a), is_sq[a.idx() as usize]);
        }
        assert_eq!(part.squares.len() as u64, (f.q() - 1) / 2);
        assert_eq!(part.nonsquares.len() as u64, (f.q() - 1) / 2);
        let ns = smallest_nonsquare(&f).unwrap();
        assert!(!is_sq[ns.idx() as usize]);
        for idx in 1..ns.idx() {
            assert!(is_sq[idx as usize]);
        }
    }
}

#[test]
fn characteristic_two_has_only_squares() {
    for r in [1u32, 2, 3] {
        let f = Field::new(2, r).unwrap();
        let part = squares_partition(&f);
        assert_eq!(part.squares.len() as u64, f.q() - 1);
        assert!(part.nonsquares.is_empty());
        assert!(smallest_nonsquare(&f).is_none());
    }
}

#[test]
fn frozen_square_data_f9() {
    // Derived by hand from the x^2+1 model of F_9: squares are
    // {1, 2, x, 2x} (indices 1, 2, 3, 6).
    let f = Field::new(3, 2).unwrap();
    let part = squares_partition(&f);
    let sq: Vec<u32> = part.squares.iter().map(|a| a.idx()).collect();
    assert_eq!(sq, vec![1, 2, 3, 6]);
    assert_eq!(smallest_nonsquare(&f).unwrap().idx(), 4);
    assert_eq!(f.multiplicative_generator().idx(), 4);
}

// ---------------------------------------------------------------------------
// power sums
// ---------------------------------------------------------------------------

fn brute_power_sum(f: &Field, d: u64, domain: PowerDomain) -> Fq {
    let mut acc = f.zero();
    for a in f.elements() {
        let include = match domain {
            PowerDomain::All => true,
            PowerDomain::Squares => !a.is_zero() && square_class(&a),
            PowerDomain::NonSquares => !a.is_zero() && !square_class(&a),
        };
        if include {
            acc = &acc + &a.pow(d);
        }
    }
    acc
}

#[test]
fn power_sum_matches_brute_force() {
    for q in [3u64, 5, 7, 9] {
        let (p, r) = if q == 9 { (3, 2) } else { (q, 1) };
        let f = Field::new(p, r).unwrap();
        for d in 0..=3 * (q - 1) {
            for domain in [
                PowerDomain::All,
                PowerDomain::Squares,
                PowerDomain::NonSquares,
            ] {
                assert_eq!(
                    power_sum(&f, d, domain).unwrap(),
                    brute_power_sum(&f, d, domain),
                    "q = {q}, d = {d}, {domain:?}"
                );
            }
        }
    }
}

#[test]
fn power_sum_all_works_in_characteristic_two() {
    for (p, r) in [(2u64, 1u32), (2, 2), (2, 3)] {
        let f = Field::new(p, r).unwrap();
        for d in 0..=3 * (f.q() - 1) {
            assert_eq!(
                power_sum(&f, d, PowerDomain::All).unwrap(),
                brute_power_sum(&f, d, PowerDomain::All)
            );
        }
        assert!(power_sum(&f, 1, PowerDomain::Squares).is_err());
    }
}

#[test]
fn domain_sums_of_random_polynomials() {
    // Σ_{γ ∈ D} f(γ) for a univariate polynomial equals the
    // coefficient-weighted combination of power sums.  100 random
    // polynomials per field.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for q in [3u64, 5, 7, 9] {
        let (p, r) = if q == 9 { (3, 2) } else { (q, 1) };
        let f = Field::new(p, r).unwrap();
        let deg = 3 * (q - 1);
        for _ in 0..100 {
            let coeffs: Vec<Fq> = (0..=deg)
                .map(|_| f.element(rng.gen_range(0..f.q()) as u32))
                .collect();
            for domain in [
                PowerDomain::All,
                PowerDomain::Squares,
                PowerDomain::NonSquares,
            ] {
                // Direct evaluation sum.
                let mut direct = f.zero();
                for a in f.elements() {
                    let include = match domain {
                        PowerDomain::All => true,
                        PowerDomain::Squares => !a.is_zero() && square_class(&a),
                        PowerDomain::NonSquares => !a.is_zero() && !square_class(&a),
                    };
                    if !include {
                        continue;
                    }
                    let mut val = f.zero();
                    for (d, c) in coeffs.iter().enumerate() {
                        val = &val + &(c * &a.pow(d as u64));
                    }
                    direct = &direct + &val;
                }
                // Closed form, by linearity.
                let mut closed = f.zero();
                for (d, c) in coeffs.iter().enumerate() {
                    closed = &closed + &(c * &power_sum(&f, d as u64, domain).unwrap());
                }
                assert_eq!(direct, closed, "q = {q}, {domain:?}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// embeddings
// ---------------------------------------------------------------------------

#[test]
fn embedding_is_a_field_homomorphism() {
    for (small, big) in [
        ((2u64, 1u32), (2u64, 3u32)),
        ((2, 2), (2, 4)),
        ((3, 1), (3, 2)),
        ((3, 2), (3, 4)),
        ((5, 1), (5, 2)),
    ] {
        let fs = Field::new(small.0, small.1).unwrap();
        let fb = Field::new(big.0, big.1).unwrap();
        let emb = Embedding::new(&fs, &fb).unwrap();
        assert!(emb.map(&fs.one()).is_one());
        let els: Vec<Fq> = fs.elements().collect();
        for a in &els {
            for b in &els {
                assert_eq!(emb.map(&(a + b)), &emb.map(a) + &emb.map(b));
                assert_eq!(emb.map(&(a * b)), &emb.map(a) * &emb.map(b));
            }
        }
        // Round trip and preimage of non-image elements.
        let mut image = vec![false; fb.q() as usize];
        for a in &els {
            let im = emb.map(a);
            image[im.idx() as usize] = true;
            assert_eq!(emb.preimage(&im), Some(a.clone()));
        }
        for b in fb.elements() {
            if !image[b.idx() as usize] {
                assert!(emb.preimage(&b).is_none());
            }
        }
    }
}

#[test]
fn embedding_rejects_non_subfields() {
    let f4 = Field::new(2, 2).unwrap();
    let f8 = Field::new(2, 3).unwrap();
    assert!(Embedding::new(&f4, &f8).is_err());
    let f9 = Field::new(3, 2).unwrap();
    assert!(Embedding::new(&f4, &f9).is_err());
}

#[test]
fn element_indexing_and_digits() {
    let f = Field::new(3, 2).unwrap();
    // idx = Σ digit_i · p^i with digit_i the coefficient of g^i.
    let a = f.element(7); // digits (1, 2): 1 + 2x
    assert_eq!(a.digits(), vec![1, 2]);
    assert_eq!(f.from_digits(&[1, 2]).idx(), 7);
    assert_eq!(f.from_digits(&[4, 5]).idx(), f.from_digits(&[1, 2]).idx());
    assert_eq!(f.from_u64(10).idx(), f.from_u64(1).idx());
    assert_eq!((-&f.one()).idx(), 2);
}
