use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use repchar::charmap::char0_gm_finite;
use repchar::crossedcat::{has_row_property, DeltaSMorphism};
use repchar::cychom::{hc_dims, reduced_hc_dims, CyclicModule};
use repchar::exactlin::{IntegerChainComplex, IntegerMatrix, SparseRationalMatrix};
use repchar::fincat::{functor_tensor_product, nerve_homology, tor_dims, FinCategory, ModuleFunctor, SetValuedFunctor, Variance};
use repchar::groupkit::{milnor_model, CyclicBarLevel, FiniteGroup, FreeWord, GroupPresentation, ReducedSimplicialSet, SimplicialGroupModel};
use repchar::rephom::{hr_degree0, hr_derived_abelianization, MonomialComplex};

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        Just(FiniteGroup::trivial()),
        (2usize..=6).prop_map(FiniteGroup::cyclic),
        Just(FiniteGroup::symmetric(3)),
        Just(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2))),
    ]
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

/// A morphism `[n] -> [m]` from a shuffle of `0..=n` cut into `m + 1` blocks.
fn deltas_morphism(max: usize) -> impl Strategy<Value = DeltaSMorphism> {
    (0..=max, 0..=max)
        .prop_flat_map(|(n, m)| {
            (Just(n), Just(m), Just((0..=n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0..=m, n + 1))
        })
        .prop_map(|(n, m, perm, blocks)| {
            let mut monomials = vec![Vec::new(); m + 1];
            for (x, b) in perm.into_iter().zip(blocks) {
                monomials[b].push(x);
            }
            DeltaSMorphism::new(n, monomials).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity_is_width(rows in 0usize..6, cols in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dense: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rand::Rng::gen_range(&mut rng, -2..=2)).collect()).collect();
        let m = SparseRationalMatrix::from_dense_rows(&dense);
        let m = if rows == 0 { SparseRationalMatrix::zeros(0, cols) } else { m };
        prop_assert_eq!(m.rank() + m.nullity(), cols);
        prop_assert_eq!(m.rank(), m.to_dense().rank());
    }

    #[test]
    fn rational_homology_matches_integer_free_ranks(a in int_matrix(3, 2), b in int_matrix(2, 3)) {
        // C_2 = Z^3 -> C_1 = Z^2 ⊕ Z^2 -> C_0 = Z^3, the first map into the first block and the
        // second map reading only the second block.
        let mut d2 = vec![vec![0i64; 3]; 4];
        for (i, row) in b.iter().enumerate() {
            d2[i].clone_from(row);
        }
        let d1: Vec<Vec<i64>> = a.iter().map(|row| [vec![0, 0], row.clone()].concat()).collect();
        let dims = vec![3, 4, 3];
        let int = IntegerChainComplex::new(
            dims.clone(),
            vec![IntegerMatrix::zeros(0, 3), IntegerMatrix::from_rows(&d1), IntegerMatrix::from_rows(&d2)],
        )
        .unwrap();
        let rat = repchar::exactlin::ChainComplex::new(
            dims,
            vec![
                SparseRationalMatrix::zeros(0, 3),
                SparseRationalMatrix::from_dense_rows(&d1),
                SparseRationalMatrix::from_dense_rows(&d2),
            ],
        )
        .unwrap();
        let free: Vec<usize> = int.homology().iter().map(|g| g.free_rank).collect();
        prop_assert_eq!(free, rat.homology_dims());
    }

    #[test]
    fn composition_keeps_the_partition(f in deltas_morphism(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rand::Rng::gen_range(&mut rng, 0..=4);
        // A random g: [k] -> [n] by dealing 0..=k into the n + 1 monomials.
        let mut monomials = vec![Vec::new(); f.source() + 1];
        let mut perm: Vec<usize> = (0..=k).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        for x in perm {
            monomials[rand::Rng::gen_range(&mut rng, 0..=f.source())].push(x);
        }
        let g = DeltaSMorphism::new(k, monomials).unwrap();
        let h = f.compose(&g).unwrap();
        let mut seen = h.concatenation();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..=k).collect::<Vec<_>>());
        prop_assert_eq!(h.target(), f.target());
        let under: Vec<usize> = (0..=k).map(|i| f.underlying_map()[g.underlying_map()[i]]).collect();
        prop_assert_eq!(h.underlying_map(), under);
        let lhs = h.abelianize_psi_sym();
        let rhs = g.abelianize_psi_sym().mul(&f.abelianize_psi_sym()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_round_trips(f in deltas_morphism(6)) {
        let fac = f.factorize();
        prop_assert!(fac.g.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(DeltaSMorphism::recompose(&fac, f.target()).unwrap(), f.clone());
        prop_assert!(has_row_property(&f));
    }

    #[test]
    fn cyclic_operator_relations(g in small_group(), q in 1usize..=3, seed in any::<u64>()) {
        let level = CyclicBarLevel::new(&g, q);
        let lower = CyclicBarLevel::new(&g, q - 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t: Vec<usize> = (0..=q).map(|_| rand::Rng::gen_range(&mut rng, 0..g.order())).collect();
        let mut s = t.clone();
        for _ in 0..=q {
            s = level.cyclic(&s);
        }
        prop_assert_eq!(&s, &t);
        for i in 1..=q {
            prop_assert_eq!(level.face(i, &level.cyclic(&t)), lower.cyclic(&level.face(i - 1, &t)));
        }
    }

    #[test]
    fn hc_is_reduced_plus_trivial(g in small_group()) {
        let full = hc_dims(&g, 2).unwrap().dims();
        let reduced = reduced_hc_dims(&g, 2).unwrap().dims();
        let base = hc_dims(&FiniteGroup::trivial(), 2).unwrap().dims();
        let sum: Vec<usize> = reduced.iter().zip(&base).map(|(a, b)| a + b).collect();
        prop_assert_eq!(&full, &sum);
        prop_assert_eq!(full[0], g.conjugacy_classes().len());
        prop_assert_eq!(full[1], 0);
        prop_assert!(CyclicModule::build(&g, 3).check_identities().is_ok());
    }

    #[test]
    fn characters_are_class_functions(g in small_group(), a in 0usize..24, b in 0usize..24) {
        let (a, b) = (a % g.order(), b % g.order());
        let ab = char0_gm_finite(&g, g.mul(a, b)).unwrap();
        let ba = char0_gm_finite(&g, g.mul(b, a)).unwrap();
        prop_assert_eq!(&ab, &ba);
        let conj = g.mul(g.mul(b, a), g.inv(b));
        prop_assert_eq!(char0_gm_finite(&g, a).unwrap(), char0_gm_finite(&g, conj).unwrap());
    }

    #[test]
    fn tor_zero_is_the_tensor_product(n in 1usize..=4, rel in prop::collection::vec((0usize..4, 0usize..4), 0..5), seed in any::<u64>()) {
        let rel: Vec<(usize, usize)> = rel.into_iter().filter(|&(a, b)| a < n && b < n && a < b).collect();
        let c = FinCategory::poset(n, &rel).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = SetValuedFunctor::random_on_poset(&c, &mut rng, 4);
        let m = ModuleFunctor::linearize(&c, &f);
        let k = ModuleFunctor::constant(&c, Variance::Contravariant);
        let tor = tor_dims(&c, &k, &m, 1).unwrap();
        prop_assert_eq!(tor[0], functor_tensor_product(&c, &k, &m).unwrap().dim);
    }

    #[test]
    fn nerve_with_a_terminal_object_is_a_point(n in 1usize..=4, rel in prop::collection::vec((0usize..4, 0usize..4), 0..5)) {
        // Adjoin a top element.
        let mut rel: Vec<(usize, usize)> = rel.into_iter().filter(|&(a, b)| a < n && b < n && a < b).collect();
        rel.extend((0..n).map(|a| (a, n)));
        let c = FinCategory::poset(n + 1, &rel).unwrap();
        prop_assert_eq!(nerve_homology(&c, 3), vec![1, 0, 0, 0]);
        prop_assert_eq!(nerve_homology(&c.opposite(), 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn degree_zero_matches_presentation(exps in prop::collection::vec(-3i64..=3, 0..3)) {
        // One generator per exponent, relator x_i^{e_i}; the constant model has no relations.
        let rank = exps.len().max(1);
        let relators: Vec<FreeWord> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| FreeWord::from_signed(&vec![if e > 0 { i as i64 + 1 } else { -(i as i64) - 1 }; e.unsigned_abs() as usize]).unwrap())
            .collect();
        let p = GroupPresentation::new(rank, relators.clone()).unwrap();
        let h1 = hr_degree0(&p).h1;
        let expect_free = (0..rank).filter(|&i| exps.get(i).copied().unwrap_or(0) == 0).count();
        prop_assert_eq!(h1.free_rank, expect_free);
        let order: BigInt = h1.torsion.iter().product();
        let expect_order: BigInt = exps.iter().map(|e| BigInt::from(e.abs())).filter(|e| *e > BigInt::from(1)).product();
        prop_assert_eq!(order, expect_order);
        if relators.is_empty() {
            let m = SimplicialGroupModel::constant_free(rank, 3);
            prop_assert_eq!(hr_derived_abelianization(&m, 1).unwrap().h1, h1);
        }
    }
}

#[test]
fn monomial_complexes_square_to_zero() {
    let models = [
        SimplicialGroupModel::constant_free(2, 4),
        milnor_model(&ReducedSimplicialSet::circle(), 4).unwrap(),
        milnor_model(&ReducedSimplicialSet::two_edge_circle(), 4).unwrap(),
        repchar::groupkit::CellModel::torus().build(4).unwrap(),
    ];
    for m in &models {
        for bound in 1..=2 {
            let mc = MonomialComplex::new(m, 3, bound);
            for w in mc.vertex_weights() {
                // weight_complex validates d^2 = 0 on construction.
                mc.weight_complex(&w).unwrap();
            }
        }
    }
}

#[test]
fn milnor_circle_abelianizes_to_a_shifted_integer() {
    let m = milnor_model(&ReducedSimplicialSet::circle(), 5).unwrap();
    let h = m.abelian_moore_complex().homology();
    assert_eq!(h[1].free_rank, 1);
    assert!(h[1].torsion.is_empty());
    for q in [0, 2, 3, 4] {
        assert!(h[q].is_trivial(), "degree {q}");
    }
}
