use gams_ldpc::code::PrototypeMatrix;
use gams_ldpc::complexity::{counts_formula, counts_instrumented, Algorithm};
use gams_ldpc::float::{DecoderVariant, FloatDecoder};
use gams_ldpc::schedule::Schedule;
use gams_ldpc::{DecodeOptions, Decoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fully populated 5 x 8 prototype: every check has degree 8 and every
/// variable degree 5.
fn regular_toy(z: usize) -> PrototypeMatrix {
    let rows: Vec<Vec<i32>> = (0..5)
        .map(|c| (0..8).map(|v| ((c * v) % z) as i32).collect())
        .collect();
    PrototypeMatrix::from_shifts(z, &rows).unwrap()
}

#[test]
fn instrumented_counts_match_formula() {
    let z = 7;
    let proto = regular_toy(z);
    let schedule = Schedule::natural(&proto);
    let (m, n) = (5 * z as u64, 8 * z as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let y: Vec<f64> = (0..proto.n())
        .map(|_| rng.random_range(-4.0..4.0))
        .collect();
    let cases = [
        (DecoderVariant::SumProduct, Algorithm::SumProduct),
        (DecoderVariant::AMinStar, Algorithm::AMinStar),
        (DecoderVariant::MinSum, Algorithm::MinSum),
        (
            DecoderVariant::OffsetMinSum { beta: 0.5 },
            Algorithm::OffsetMinSum,
        ),
        (
            DecoderVariant::NormalizedMinSum { alpha: 0.75 },
            Algorithm::NormalizedMinSum,
        ),
        (
            DecoderVariant::GaMs {
                gamma: 2,
                beta: 0.1,
            },
            Algorithm::GaMs { gamma: 2 },
        ),
        (
            DecoderVariant::GaMs {
                gamma: 3,
                beta: 0.25,
            },
            Algorithm::GaMs { gamma: 3 },
        ),
        (
            DecoderVariant::GaMs {
                gamma: 4,
                beta: 0.1,
            },
            Algorithm::GaMs { gamma: 4 },
        ),
    ];
    for (variant, alg) in cases {
        for iterations in [1, 3] {
            let opts = DecodeOptions {
                max_iterations: iterations,
                early_exit: false,
                count_ops: true,
            };
            let dec = FloatDecoder::new(variant, &proto, &schedule, opts).unwrap();
            let result = dec.decode(&y).unwrap();
            assert_eq!(
                counts_instrumented(&result).unwrap(),
                counts_formula(alg, 8, 5, m, n),
                "{alg}, {iterations} iterations"
            );
        }
    }
}

#[test]
fn instrumented_requires_counting() {
    let proto = regular_toy(3);
    let schedule = Schedule::natural(&proto);
    let dec = FloatDecoder::new(
        DecoderVariant::MinSum,
        &proto,
        &schedule,
        DecodeOptions::default(),
    )
    .unwrap();
    let result = dec.decode(&vec![1.0; proto.n()]).unwrap();
    assert!(counts_instrumented(&result).is_err());
}
