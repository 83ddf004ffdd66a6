use std::collections::BTreeSet;
use std::sync::Arc;

use swcep_core::field::FiniteField;
use swcep_core::ideal::{
    ideal_generated, is_left_pir, is_nilpotent, is_right_pir, is_two_sided, jacobson_radical, left_ideals,
    principal_generator, principal_left_ideal, quotient,
};
use swcep_core::matrix::gaussian_binomial;
use swcep_core::ring::{block_projections, Block, Ring, RingSpec};
use swcep_core::socle::wedderburn_data;
use swcep_core::{Error, Guards};

fn g() -> Guards {
    Guards::default()
}

fn zn(n: u32) -> Arc<Ring> {
    Arc::new(Ring::mod_n(n, &g()).unwrap())
}

fn mat(m: usize, q: u64) -> Arc<Ring> {
    Arc::new(Ring::make(&RingSpec::Matrix { m, q }, &g()).unwrap())
}

fn prod(f: Vec<Arc<Ring>>) -> Arc<Ring> {
    Arc::new(Ring::product(f, &g()).unwrap())
}

/// Upper triangular 2x2 matrices over F_2, entered as bare tables.
/// Element index is a*4 + b*2 + d for [[a,b],[0,d]].
fn upper_triangular() -> Arc<Ring> {
    let dec = |x: usize| ((x >> 2) & 1, (x >> 1) & 1, x & 1);
    let enc = |(a, b, d): (usize, usize, usize)| (a * 4 + b * 2 + d) as u32;
    let add: Vec<Vec<u32>> = (0..8).map(|x| (0..8).map(|y| (x ^ y) as u32).collect()).collect();
    let mul: Vec<Vec<u32>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (a, b, d) = dec(x);
                    let (e, f, h) = dec(y);
                    enc((a & e, (a & f) ^ (b & h), d & h))
                })
                .collect()
        })
        .collect();
    Arc::new(Ring::from_tables(&add, &mul, &g()).unwrap())
}

fn catalog() -> Vec<(&'static str, Arc<Ring>)> {
    vec![
        ("Z2", zn(2)),
        ("Z4", zn(4)),
        ("Z6", zn(6)),
        ("Z8", zn(8)),
        ("Z9", zn(9)),
        ("F4", mat(1, 4)),
        ("M2F2", mat(2, 2)),
        ("Z2xZ2", prod(vec![zn(2), zn(2)])),
        ("Z2xZ4", prod(vec![zn(2), zn(4)])),
        ("UT2F2", upper_triangular()),
    ]
}

/// Every subset of the ring closed under addition and left multiplication.
fn left_ideals_by_subsets(r: &Ring) -> Vec<BTreeSet<u32>> {
    let n = r.order();
    assert!(n <= 16);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << r.zero()) == 0 {
            continue;
        }
        let has = |x: u32| mask & (1 << x) != 0;
        let members: Vec<u32> = (0..n as u32).filter(|&x| has(x)).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| has(r.add(a, b))) && r.elements().all(|s| has(r.mul(s, a))));
        if closed {
            out.push(members.into_iter().collect());
        }
    }
    out
}

fn radical_by_maximal_ideals(r: &Ring) -> BTreeSet<u32> {
    let ideals = left_ideals_by_subsets(r);
    let n = r.order();
    let maximal: Vec<&BTreeSet<u32>> = ideals
        .iter()
        .filter(|i| {
            i.len() < n
                && !ideals
                    .iter()
                    .any(|j| j.len() < n && j.len() > i.len() && i.is_subset(j))
        })
        .collect();
    r.elements().filter(|x| maximal.iter().all(|m| m.contains(x))).collect()
}

#[test]
fn ring_construction_examples() {
    let z4 = zn(4);
    assert_eq!(z4.order(), 4);
    assert_eq!(z4.mul(2, 2), 0);
    let m2 = mat(2, 2);
    assert_eq!(m2.order(), 16);
    assert_eq!(m2.one(), 9);
    for a in m2.elements() {
        assert_eq!(m2.mul(9, a), a);
        assert_eq!(m2.mul(a, 9), a);
    }
}

fn isomorphisms(a: &Ring, b: &Ring) -> usize {
    fn go(a: &Ring, b: &Ring, map: &mut Vec<u32>, used: &mut Vec<bool>, count: &mut usize) {
        let i = map.len();
        if i == a.order() {
            let ok = a.elements().all(|x| {
                a.elements().all(|y| {
                    map[a.add(x, y) as usize] == b.add(map[x as usize], map[y as usize])
                        && map[a.mul(x, y) as usize] == b.mul(map[x as usize], map[y as usize])
                })
            });
            *count += ok as usize;
            return;
        }
        for t in b.elements() {
            if !used[t as usize] {
                used[t as usize] = true;
                map.push(t);
                go(a, b, map, used, count);
                map.pop();
                used[t as usize] = false;
            }
        }
    }
    if a.order() != b.order() {
        return 0;
    }
    let mut count = 0;
    go(a, b, &mut Vec::new(), &mut vec![false; b.order()], &mut count);
    count
}

#[test]
fn product_of_z2_and_z3_is_z6() {
    let p = prod(vec![zn(2), zn(3)]);
    assert_eq!(p.order(), 6);
    // Z/6 has a unique ring automorphism, so exactly one isomorphism.
    assert_eq!(isomorphisms(&p, &zn(6)), 1);
    assert_eq!(isomorphisms(&zn(4), &prod(vec![zn(2), zn(2)])), 0);
}

#[test]
fn radical_examples() {
    assert_eq!(jacobson_radical(&zn(4)).members(), &[0, 2]);
    assert_eq!(jacobson_radical(&mat(2, 2)).members(), &[0]);
    assert_eq!(jacobson_radical(&zn(6)).members(), &[0]);
    assert_eq!(jacobson_radical(&zn(8)).members(), &[0, 2, 4, 6]);
}

#[test]
fn radical_matches_intersection_of_maximal_left_ideals() {
    for (name, r) in catalog() {
        let rad = jacobson_radical(&r);
        let oracle = radical_by_maximal_ideals(&r);
        assert_eq!(rad.members().iter().copied().collect::<BTreeSet<_>>(), oracle, "{name}");
    }
}

#[test]
fn radical_is_nilpotent_two_sided_and_quotient_is_semisimple() {
    for (name, r) in catalog() {
        let rad = jacobson_radical(&r);
        assert!(is_two_sided(&r, rad.as_set()), "{name}");
        assert!(is_nilpotent(&r, rad.as_set()), "{name}");
        let q = quotient(&r, &rad).unwrap();
        assert_eq!(q.ring.order() * rad.len(), r.order(), "{name}");
        assert_eq!(jacobson_radical(&q.ring).members(), &[q.ring.zero()], "{name}");
        for x in r.elements() {
            for y in r.elements() {
                let (px, py) = (q.projection[x as usize], q.projection[y as usize]);
                assert_eq!(q.projection[r.mul(x, y) as usize], q.ring.mul(px, py));
                assert_eq!(q.projection[r.add(x, y) as usize], q.ring.add(px, py));
            }
        }
    }
}

#[test]
fn quotient_needs_a_two_sided_ideal() {
    let m2 = mat(2, 2);
    let e11 = 8;
    let left = principal_left_ideal(&m2, e11);
    assert_eq!(left.len(), 4);
    assert!(matches!(quotient(&m2, &left), Err(Error::Incompatible(_))));
}

#[test]
fn left_ideal_counts() {
    assert_eq!(left_ideals(&zn(4), &g()).unwrap().len(), 3);
    assert_eq!(left_ideals(&mat(2, 2), &g()).unwrap().len(), 5);
    assert_eq!(left_ideals(&zn(6), &g()).unwrap().len(), 4);
    let z4 = left_ideals(&zn(4), &g()).unwrap();
    let sets: Vec<&[u32]> = z4.iter().map(|i| i.members()).collect();
    assert_eq!(sets, vec![&[0][..], &[0, 2][..], &[0, 1, 2, 3][..]]);
}

#[test]
fn left_ideals_match_subset_oracle_and_form_a_lattice() {
    for (name, r) in catalog() {
        let ours: BTreeSet<BTreeSet<u32>> = left_ideals(&r, &g())
            .unwrap()
            .iter()
            .map(|i| i.members().iter().copied().collect())
            .collect();
        let oracle: BTreeSet<BTreeSet<u32>> = left_ideals_by_subsets(&r).into_iter().collect();
        assert_eq!(ours, oracle, "{name}");
        for a in &ours {
            for b in &ours {
                assert!(
                    ours.contains(&a.intersection(b).copied().collect::<BTreeSet<_>>()),
                    "{name}"
                );
                let gens: Vec<u32> = a.union(b).copied().collect();
                let sum: BTreeSet<u32> = ideal_generated(&r, &gens).members().iter().copied().collect();
                let direct: BTreeSet<u32> = a
                    .iter()
                    .flat_map(|&x| {
                        let r = &r;
                        b.iter().map(move |&y| r.add(x, y))
                    })
                    .collect();
                assert_eq!(sum, direct, "{name}");
                assert!(ours.contains(&sum));
            }
        }
    }
}

#[test]
fn matrix_ring_ideal_counts_match_subspace_counts() {
    for (m, q) in [(1usize, 2u64), (1, 3), (2, 2)] {
        let expected: u128 = (0..=m as u32).map(|d| gaussian_binomial(m as u32, d, q)).sum();
        assert_eq!(left_ideals(&mat(m, q), &g()).unwrap().len() as u128, expected);
    }
}

#[test]
fn ideal_generated_examples() {
    let z4 = zn(4);
    assert_eq!(ideal_generated(&z4, &[2]).members(), &[0, 2]);
    assert_eq!(ideal_generated(&z4, &[3]).members(), &[0, 1, 2, 3]);
    let m2 = mat(2, 2);
    let i = ideal_generated(&m2, &[8]);
    assert_eq!(i.len(), 4);
    // Second column zero: entries (0,1) and (1,1), bits 2 and 0.
    assert!(i.members().iter().all(|&x| x & 0b0101 == 0));
}

#[test]
fn principal_ideal_ring_examples() {
    assert!(is_left_pir(&zn(4), &g()).unwrap());
    assert!(is_left_pir(&mat(2, 2), &g()).unwrap());
    assert!(is_right_pir(&mat(2, 2), &g()).unwrap());
    assert!(is_left_pir(&prod(vec![zn(2), zn(2)]), &g()).unwrap());
    // Z2[x,y]/(x,y)^2 is local with a two-generated maximal ideal.
    let add: Vec<Vec<u32>> = (0..8).map(|x| (0..8).map(|y| x ^ y).collect()).collect();
    let mul: Vec<Vec<u32>> = (0..8u32)
        .map(|x| {
            (0..8u32)
                .map(|y| {
                    let c = (x & 1) & (y & 1);
                    let lin = |a: u32, b: u32| if a & 1 == 1 { b } else { 0 };
                    c | ((lin(x, y) ^ lin(y, x)) & 0b110)
                })
                .collect()
        })
        .collect();
    let r = Ring::from_tables(&add, &mul, &g()).unwrap();
    assert!(!is_left_pir(&r, &g()).unwrap());
}

#[test]
fn principal_generator_examples() {
    let z4 = zn(4);
    assert_eq!(principal_generator(&z4, &ideal_generated(&z4, &[2])).unwrap(), 2);
    assert_eq!(principal_generator(&z4, &ideal_generated(&z4, &[1])).unwrap(), 1);
    assert_eq!(principal_generator(&z4, &ideal_generated(&z4, &[])).unwrap(), 0);
}

#[test]
fn principal_generator_lies_only_in_ideals_containing_its_ideal() {
    for (name, r) in catalog() {
        let ideals = left_ideals(&r, &g()).unwrap();
        for i in &ideals {
            let Ok(e) = principal_generator(&r, i) else { continue };
            assert_eq!(principal_left_ideal(&r, e).members(), i.members(), "{name}");
            for j in &ideals {
                if j.contains(e) {
                    assert!(i.is_subset(j), "{name}");
                }
            }
        }
    }
}

#[test]
fn wedderburn_examples() {
    let blocks = |r: &Arc<Ring>| wedderburn_data(r, &g()).unwrap().blocks;
    assert_eq!(blocks(&mat(2, 2)), vec![Block { mu: 2, q: 2 }]);
    assert_eq!(blocks(&zn(4)), vec![Block { mu: 1, q: 2 }]);
    assert_eq!(blocks(&zn(6)), vec![Block { mu: 1, q: 2 }, Block { mu: 1, q: 3 }]);
    assert_eq!(
        blocks(&upper_triangular()),
        vec![Block { mu: 1, q: 2 }, Block { mu: 1, q: 2 }]
    );
}

#[test]
fn semisimple_order_identity() {
    for (name, r) in catalog() {
        let w = wedderburn_data(&r, &g()).unwrap();
        let rad = jacobson_radical(&r);
        assert_eq!(w.semisimple_order(), (r.order() / rad.len()) as u128, "{name}");
    }
}

#[test]
fn block_projections_are_surjective_ring_homs() {
    for (name, r) in catalog() {
        let Some(bps) = block_projections(&r, &g()).unwrap() else {
            assert_eq!(name, "UT2F2");
            continue;
        };
        for bp in bps {
            assert!(r.is_hom_into(&bp.target, &bp.map), "{name}");
            let image: BTreeSet<u32> = bp.map.iter().copied().collect();
            assert_eq!(image.len(), bp.target.order(), "{name}");
        }
    }
}

#[test]
fn table_axiom_violations_are_rejected() {
    let add: Vec<Vec<u32>> = (0..2).map(|x| (0..2).map(|y| x ^ y).collect()).collect();
    let bad_mul = vec![vec![0, 1], vec![1, 1]];
    assert!(matches!(
        Ring::from_tables(&add, &bad_mul, &g()),
        Err(Error::AxiomViolation(_))
    ));
    let big = Guards {
        max_enum_order: 4,
        ..Guards::default()
    };
    assert!(matches!(
        Ring::mod_n(9, &big).and_then(|_| left_ideals(&zn(9), &big)),
        Err(Error::GuardExceeded { .. })
    ));
    let f = Arc::new(FiniteField::with_order(2, &g()).unwrap());
    assert!(Ring::matrix(7, f, &g()).is_err());
}
