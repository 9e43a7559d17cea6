use std::time::Instant;
use walkzeta::walk::build_operator;
use walkzeta::{char_poly, CoinFamily, CoinType, WalkSpec};

fn main() {
    for (family, coin_type, n) in [
        (CoinFamily::Grover3, CoinType::M, 32),
        (CoinFamily::Grover3, CoinType::M, 48),
        (CoinFamily::Grover3, CoinType::M, 64),
        (CoinFamily::Hadamard, CoinType::F, 64),
    ] {
        let spec = WalkSpec::new(family, coin_type, n).unwrap();
        let t0 = Instant::now();
        let op = build_operator(&spec);
        let c = char_poly(&op);
        println!(
            "{spec}: dim {} charpoly in {:.2?} (rational: {})",
            op.matrix.dim(),
            t0.elapsed(),
            c.is_rational
        );
    }
}
