use gams_ldpc::code::{BaseGraphId, Code, CodeConfig, Encoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn full_code(bg: BaseGraphId, z: usize) -> Code {
    let e = (bg.n_cols() - 2) * z;
    Code::builtin(CodeConfig::new(bg, z, bg.k_u_max(), e).unwrap())
}

#[test]
fn encoded_words_satisfy_every_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for bg in [BaseGraphId::Bg1, BaseGraphId::Bg2] {
        // one lifting size from five different sets
        for z in [2, 6, 20, 28, 52] {
            let code = full_code(bg, z);
            let h = code.proto.expand_full_h().unwrap();
            let enc = Encoder::new(&code.proto, code.config.k_u).unwrap();
            for _ in 0..100 {
                let msg: Vec<u8> = (0..enc.k()).map(|_| rng.random_range(0..2)).collect();
                let cw = enc.encode(&msg).unwrap();
                assert_eq!(&cw[..msg.len()], &msg[..], "systematic {bg} Z={z}");
                assert!(h.mul_vec(&cw).iter().all(|&s| s == 0), "{bg} Z={z}");
                assert_eq!(code.proto.syndrome_weight(&cw), 0);
            }
        }
    }
}

#[test]
fn rate_matched_codes_encode() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (bg, num, den) in [
        (BaseGraphId::Bg1, 1, 3),
        (BaseGraphId::Bg1, 8, 9),
        (BaseGraphId::Bg2, 1, 5),
        (BaseGraphId::Bg2, 2, 3),
    ] {
        let code = Code::builtin(CodeConfig::from_rate(bg, 384, bg.k_u_max(), num, den).unwrap());
        let enc = Encoder::new(&code.proto, code.config.k_u).unwrap();
        for _ in 0..3 {
            let msg: Vec<u8> = (0..enc.k()).map(|_| rng.random_range(0..2)).collect();
            let cw = enc.encode(&msg).unwrap();
            assert_eq!(cw.len(), code.config.n());
            assert_eq!(code.proto.syndrome_weight(&cw), 0);
        }
    }
}

#[test]
fn syndrome_weight_matches_dense_product() {
    let code = full_code(BaseGraphId::Bg2, 5);
    let h = code.proto.expand_full_h().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let bits: Vec<u8> = (0..code.proto.n())
            .map(|_| rng.random_range(0..2))
            .collect();
        let dense = h.mul_vec(&bits).iter().filter(|&&s| s == 1).count();
        assert_eq!(code.proto.syndrome_weight(&bits), dense);
    }
}
