use std::time::Instant;
use waring::solve::SolveLimits;
use waring::{
    base_locus, decompose, eigen_ideal, generate_random_rank_r, kernel, koszul_flattening,
    rank_of, LocusStatus, Method, Rational, Scalar, TensorMap,
};

fn main() {
    for seed in 0..3u64 {
        let t0 = Instant::now();
        let (f, _, _) = generate_random_rank_r(2, 5, 7, seed);
        let p = koszul_flattening(&f, 2, 1);
        println!("seed {seed}: flattening {:?}", t0.elapsed());
        let t = Instant::now();
        assert_eq!(rank_of(&p.matrix), 14);
        println!("  rank {:?}", t.elapsed());
        let t = Instant::now();
        let k = kernel(&p.matrix);
        assert_eq!(k.dim(), 4);
        println!("  kernel {:?}", t.elapsed());
        let t = Instant::now();
        let maps: Vec<TensorMap<Rational>> = k
            .vectors
            .iter()
            .map(|v| TensorMap::from_kernel_vector(2, 2, 1, v))
            .collect();
        let ideal = eigen_ideal(&maps, 2, 1);
        println!("  ideal {} gens {:?}", ideal.generators.len(), t.elapsed());
        let t = Instant::now();
        let locus = base_locus(&ideal, seed, &SolveLimits::for_flattening(2, 2)).unwrap();
        println!(
            "  locus {:?} {} pts {:?}",
            locus.status,
            locus.points.len(),
            t.elapsed()
        );
        assert_eq!(locus.status, LocusStatus::FiniteReduced);
        assert_eq!(locus.points.len(), 7);
        let t = Instant::now();
        let dec = decompose(&f, Method::KoszulA1, seed).unwrap();
        println!("  decompose terms {} {:?}", dec.num_terms(), t.elapsed());
        let t = Instant::now();
        let ff = f.map_scalars(|c| Scalar::to_f64(c));
        let out = decompose(&ff, Method::KoszulA1, seed).unwrap();
        println!(
            "  float variant residual {} {:?}",
            out.residual(),
            t.elapsed()
        );
    }
}
