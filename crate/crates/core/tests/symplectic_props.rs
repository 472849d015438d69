use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srs_core::symplectic::{mixed_completion, orthogonal_project, random_completion_choices};
use srs_core::{BitMat, BitVec, SympSpace};

fn space(max: usize) -> impl Strategy<Value = SympSpace> {
    (1..=max, any::<u64>()).prop_map(|(d, bits)| {
        let mut gram = BitMat::zeros(d, d);
        let mut k = 0;
        for i in 0..d {
            for j in i + 1..d {
                if bits >> (k % 64) & 1 == 1 {
                    gram.set(i, j, true);
                    gram.set(j, i, true);
                }
                k += 1;
            }
        }
        SympSpace::new(gram).unwrap()
    })
}

proptest! {
    #[test]
    fn symplectic_basis_block_form(s in space(12)) {
        let sb = s.symplectic_basis();
        let d = s.dim();
        let basis = sb.matrix(d);
        prop_assert_eq!(basis.rank(), d);
        let ty = s.space_type();
        prop_assert_eq!(sb.x.len(), ty.n);
        let mut block = BitMat::zeros(d, d);
        for i in 0..ty.n {
            block.set(2 * i, 2 * i + 1, true);
            block.set(2 * i + 1, 2 * i, true);
        }
        prop_assert_eq!(s.gram().congruence(&basis).unwrap(), block);
    }

    #[test]
    fn nullity_is_radical_dimension(s in space(12)) {
        prop_assert_eq!(s.space_type().k, s.radical().len());
        prop_assert_eq!(s.space_type().dim(), s.dim());
        for z in s.radical() {
            prop_assert!(s.is_in_radical(&z));
        }
    }

    #[test]
    fn completion_is_nondegenerate(s in space(10), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let (proj, radform) = random_completion_choices(&s, &mut rng);
            let m = mixed_completion(&s, &proj, &radform).unwrap();
            prop_assert_eq!(m.matrix().rank(), s.dim());
        }
    }

    #[test]
    fn projection_decompositions_differ_by_radical(s in space(6), wmask in any::<u64>(), vmask in any::<u64>()) {
        let d = s.dim();
        let wbasis: Vec<BitVec> = (0..d)
            .filter(|i| wmask >> i & 1 == 1)
            .map(|i| BitVec::unit(d, i))
            .collect();
        let v = BitVec::from_mask(d, vmask & ((1 << d) - 1));
        let w_elems: Vec<BitVec> = (0u64..1 << wbasis.len())
            .map(|c| wbasis.iter().enumerate().filter(|(i, _)| c >> i & 1 == 1).fold(BitVec::zeros(d), |a, (_, b)| &a + b))
            .collect();
        let perp = |u: &BitVec| w_elems.iter().all(|w| !s.pair(u, w));
        let decompositions: Vec<&BitVec> = w_elems.iter().filter(|vw| perp(&(&v + *vw))).collect();
        match orthogonal_project(&s, &wbasis, &v) {
            Ok((v0, vw)) => {
                prop_assert_eq!(&v0 + &vw, v.clone());
                prop_assert!(perp(&v0));
                prop_assert!(w_elems.contains(&vw));
                for other in decompositions {
                    let t = &vw + other;
                    prop_assert!(perp(&t), "difference must lie in the radical of W");
                }
            }
            Err(_) => prop_assert!(decompositions.is_empty()),
        }
    }
}
