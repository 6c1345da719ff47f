use crate::code::{BaseGraphId, PrototypeMatrix};
use crate::decoder::{DecodeOptions, DecodeResult, Decoder};
use crate::error::{Error, Result};
use crate::schedule::Schedule;

use super::compress::MAX_COMPRESSED_DEGREE;
use super::minima::MAX_GAMMA;
use super::{lut_min, sort_min, BoxPlusLut, CompressedRRow, MinimaSet, PpcState, QuantScheme};

/// How R-messages are kept between iterations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RStorage {
    /// One word per edge.
    Explicit,
    /// Two magnitudes, critical index and sign bits per check row.
    #[default]
    Compressed,
}

/// How Q-messages are aligned to the circulants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Rotation {
    /// Rotate on read, un-rotate on write-back.
    Naive,
    /// Keep Q in the rotation of its last layer and rotate by the difference.
    #[default]
    Tracked,
}

/// Early-termination test evaluated at the end of each sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Termination {
    /// Per-layer partial parity checks gathered while the sweep runs.
    #[default]
    Ppc,
    /// Complete syndrome of the hard decisions.
    Syndrome,
}

/// Fixed-point GA-MS parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GamsParams {
    pub gamma: usize,
    pub scheme: QuantScheme,
    pub beta: f64,
}

impl GamsParams {
    /// GA-MS-3 with (7,5,1) and β = 0.25 (BG1) or 0.1 (BG2); GA-MS-4 and
    /// above with (8,6,2) and β = 0.1; GA-MS-2 with (7,5,1) and β = 0.25.
    pub fn default_for(gamma: usize, bg: BaseGraphId) -> GamsParams {
        match gamma {
            0..=3 => GamsParams {
                gamma,
                scheme: QuantScheme::S751,
                beta: if bg == BaseGraphId::Bg2 && gamma == 3 {
                    0.1
                } else {
                    0.25
                },
            },
            _ => GamsParams {
                gamma,
                scheme: QuantScheme::S862,
                beta: 0.1,
            },
        }
    }
}

/// Termination and syndrome status at the end of one sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepTrace {
    pub ppc_passed_layers: usize,
    pub ppc_all_passed: bool,
    pub syndrome_weight: usize,
}

/// Decode result with the final fixed-point messages.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantizedOutcome {
    pub result: DecodeResult,
    /// Posteriors in natural (unrotated) order.
    pub q: Vec<i32>,
    /// R-messages per layer, `r[c][j * z + k]`.
    pub r: Vec<Vec<i32>>,
    /// One entry per sweep when tracing is enabled.
    pub trace: Vec<SweepTrace>,
}

#[derive(Clone, Debug)]
struct Layer {
    cols: Vec<usize>,
    shifts: Vec<usize>,
    min_order: Vec<usize>,
    sel_order: Vec<usize>,
}

/// Phase-split fixed-point layered GA-MS decoder.
#[derive(Clone, Debug)]
pub struct QuantizedDecoder<'a> {
    proto: &'a PrototypeMatrix,
    schedule: Schedule,
    layers: Vec<Layer>,
    lut: BoxPlusLut,
    gamma: usize,
    options: DecodeOptions,
    storage: RStorage,
    rotation: Rotation,
    termination: Termination,
    trace: bool,
}

impl<'a> QuantizedDecoder<'a> {
    pub fn new(
        proto: &'a PrototypeMatrix,
        schedule: &Schedule,
        params: GamsParams,
        options: DecodeOptions,
    ) -> Result<QuantizedDecoder<'a>> {
        let lut = BoxPlusLut::build(params.scheme, params.beta)?;
        QuantizedDecoder::with_lut(proto, schedule, lut, params.gamma, options)
    }

    pub fn with_lut(
        proto: &'a PrototypeMatrix,
        schedule: &Schedule,
        lut: BoxPlusLut,
        gamma: usize,
        options: DecodeOptions,
    ) -> Result<QuantizedDecoder<'a>> {
        if !(2..=MAX_GAMMA).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "GA-MS needs 2 <= gamma <= {MAX_GAMMA}, got {gamma}"
            )));
        }
        schedule.validate(proto)?;
        let mut layers = Vec::with_capacity(proto.m_p());
        for c in 0..proto.m_p() {
            let cols = proto.row_columns(c).to_vec();
            if cols.len() < 2 {
                return Err(Error::DegreeTooSmall(cols.len()));
            }
            let position = |v: &usize| cols.binary_search(v).expect("validated schedule");
            layers.push(Layer {
                shifts: cols.iter().map(|&v| proto.shift(c, v).unwrap()).collect(),
                min_order: schedule.column_order[c].iter().map(position).collect(),
                sel_order: schedule.sel_order[c].iter().map(position).collect(),
                cols,
            });
        }
        Ok(QuantizedDecoder {
            proto,
            schedule: schedule.clone(),
            layers,
            lut,
            gamma,
            options,
            storage: RStorage::default(),
            rotation: Rotation::default(),
            termination: Termination::default(),
            trace: false,
        })
    }

    pub fn with_storage(mut self, storage: RStorage) -> Result<Self> {
        if storage == RStorage::Compressed
            && self
                .layers
                .iter()
                .any(|l| l.cols.len() > MAX_COMPRESSED_DEGREE)
        {
            return Err(Error::InvalidParameter(format!(
                "compressed R storage supports check degrees up to {MAX_COMPRESSED_DEGREE}"
            )));
        }
        self.storage = storage;
        Ok(self)
    }

    pub fn with_rotation(mut self, rotation: Rotation) -> Self {
        self.rotation = rotation;
        self
    }

    pub fn with_termination(mut self, termination: Termination) -> Self {
        self.termination = termination;
        self
    }

    /// Records a [`SweepTrace`] per iteration.
    pub fn with_trace(mut self, trace: bool) -> Self {
        self.trace = trace;
        self
    }

    pub fn scheme(&self) -> QuantScheme {
        self.lut.scheme()
    }

    pub fn lut(&self) -> &BoxPlusLut {
        &self.lut
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    /// Decodes fixed-point channel LLRs (already quantized to the VN range).
    pub fn decode_fixed(&self, y: &[i32]) -> Result<QuantizedOutcome> {
        let p = self.proto;
        let (z, n) = (p.z(), p.n());
        if y.len() != n {
            return Err(Error::LlrLength {
                got: y.len(),
                expected: n,
            });
        }
        let scheme = self.lut.scheme();
        let (vn_max, cn_max) = (scheme.vn_max(), scheme.cn_max());
        if let Some(&bad) = y.iter().find(|x| x.abs() > vn_max) {
            return Err(Error::InvalidParameter(format!(
                "fixed-point LLR {bad} outside the {}-bit VN range",
                scheme.b_vn
            )));
        }
        let sat = |x: i32| x.clamp(-vn_max, vn_max);
        let tracked = self.rotation == Rotation::Tracked;
        let d_max = self.layers.iter().map(|l| l.cols.len()).max().unwrap_or(0);

        let mut q = y.to_vec();
        let mut rot = vec![0usize; p.n_p()];
        let mut r_explicit: Vec<Vec<i32>> = match self.storage {
            RStorage::Explicit => self
                .layers
                .iter()
                .map(|l| vec![0; l.cols.len() * z])
                .collect(),
            RStorage::Compressed => Vec::new(),
        };
        let mut r_compressed: Vec<Vec<CompressedRRow>> = match self.storage {
            RStorage::Explicit => Vec::new(),
            RStorage::Compressed => vec![vec![CompressedRRow::default(); z]; self.layers.len()],
        };
        let mut t_mem = vec![0i32; d_max * z];
        let mut r_layer = vec![0i32; d_max * z];
        let mut omega = vec![0usize; d_max];
        let mut minima = vec![MinimaSet::new(self.gamma, cn_max); z];
        let mut parities = vec![0u8; z];
        let mut row = Vec::with_capacity(d_max);
        let mut ppc = PpcState::new(self.layers.len());
        let mut trace = Vec::new();
        let mut iterations = 0;
        let mut stopped = false;

        while iterations < self.options.max_iterations && !stopped {
            ppc.reset();
            for &c in &self.schedule.layer_order {
                let layer = &self.layers[c];
                let d = layer.cols.len();

                // Phase 1: MIN
                for m in minima.iter_mut() {
                    m.reset(cn_max);
                }
                for &j in &layer.min_order {
                    let v = layer.cols[j];
                    let w = if tracked {
                        (z + layer.shifts[j] - rot[v]) % z
                    } else {
                        layer.shifts[j]
                    };
                    omega[j] = w;
                    let base = v * z;
                    for k in 0..z {
                        let r_old = match self.storage {
                            RStorage::Explicit => r_explicit[c][j * z + k],
                            RStorage::Compressed => r_compressed[c][k].get(j),
                        };
                        let t = sat(q[base + (k + w) % z] - r_old);
                        t_mem[j * z + k] = t;
                        let set = &mut minima[k];
                        sort_min(set, t.abs().min(cn_max), v);
                        set.negative ^= t < 0;
                    }
                }

                // Phase 2: SEL
                parities.fill(0);
                for &j in &layer.sel_order {
                    let v = layer.cols[j];
                    let base = v * z;
                    for k in 0..z {
                        let t = t_mem[j * z + k];
                        let set = &minima[k];
                        let mag = lut_min(&self.lut, set, v);
                        debug_assert!((0..=cn_max).contains(&mag));
                        let r = if set.negative != (t < 0) { -mag } else { mag };
                        r_layer[j * z + k] = r;
                        let updated = sat(t + r);
                        let slot = if tracked {
                            base + k
                        } else {
                            base + (k + omega[j]) % z
                        };
                        q[slot] = updated;
                        parities[k] ^= u8::from(updated < 0);
                    }
                    if tracked {
                        rot[v] = layer.shifts[j];
                    }
                }
                match self.storage {
                    RStorage::Explicit => {
                        r_explicit[c].copy_from_slice(&r_layer[..d * z]);
                    }
                    RStorage::Compressed => {
                        for k in 0..z {
                            row.clear();
                            row.extend((0..d).map(|j| r_layer[j * z + k]));
                            let critical = layer
                                .cols
                                .binary_search(&minima[k].v_min)
                                .expect("minimum column belongs to the layer");
                            r_compressed[c][k] = CompressedRRow::compress(&row, critical)?;
                        }
                    }
                }
                ppc.update(c, parities.iter().copied());
            }
            iterations += 1;
            let all_passed = ppc.all_passed();
            let needs_syndrome = self.trace
                || (self.options.early_exit && self.termination == Termination::Syndrome);
            let syndrome_weight = if needs_syndrome {
                p.syndrome_weight(&hard(&unrotate(&q, &rot, z, tracked)))
            } else {
                0
            };
            if self.trace {
                trace.push(SweepTrace {
                    ppc_passed_layers: ppc.flags().iter().filter(|&&f| f).count(),
                    ppc_all_passed: all_passed,
                    syndrome_weight,
                });
            }
            stopped = self.options.early_exit
                && match self.termination {
                    Termination::Ppc => all_passed,
                    Termination::Syndrome => syndrome_weight == 0,
                };
        }

        let q = unrotate(&q, &rot, z, tracked);
        let bits = hard(&q);
        let syndrome = p.syndrome_weight(&bits);
        let r = match self.storage {
            RStorage::Explicit => r_explicit,
            RStorage::Compressed => self
                .layers
                .iter()
                .zip(&r_compressed)
                .map(|(layer, rows)| {
                    let d = layer.cols.len();
                    let mut out = vec![0; d * z];
                    for (k, row) in rows.iter().enumerate() {
                        for j in 0..d {
                            out[j * z + k] = row.get(j);
                        }
                    }
                    out
                })
                .collect(),
        };
        Ok(QuantizedOutcome {
            result: DecodeResult {
                bits,
                converged: syndrome == 0,
                iterations,
                syndrome_weight: syndrome,
                ops: None,
            },
            q,
            r,
            trace,
        })
    }
}

impl Decoder for QuantizedDecoder<'_> {
    fn decode(&self, llrs: &[f64]) -> Result<DecodeResult> {
        let scheme = self.lut.scheme();
        let y: Vec<i32> = llrs.iter().map(|&x| scheme.quantize(x)).collect();
        self.decode_fixed(&y).map(|o| o.result)
    }

    fn name(&self) -> String {
        format!(
            "GA-MS-{}-fx({}, b={})",
            self.gamma,
            self.lut.scheme(),
            self.lut.beta()
        )
    }
}

fn hard(q: &[i32]) -> Vec<u8> {
    q.iter().map(|&x| u8::from(x < 0)).collect()
}

/// Natural-order posteriors from storage rotated by `rot` per block column.
fn unrotate(q: &[i32], rot: &[usize], z: usize, tracked: bool) -> Vec<i32> {
    if !tracked {
        return q.to_vec();
    }
    let mut out = vec![0; q.len()];
    for (v, &w) in rot.iter().enumerate() {
        for k in 0..z {
            out[v * z + (k + w) % z] = q[v * z + k];
        }
    }
    out
}

/// Rotation applied when layer `c` reads block column `v` in steady state:
/// `(Z + H[c][v] - H[c_prev][v]) mod Z`, where `c_prev` is the closest
/// earlier layer in schedule order (cyclically) that also contains `v`.
/// On the very first visit of a column the decoder rotates by `H[c][v]`.
pub fn rerotation_offset(
    proto: &PrototypeMatrix,
    c: usize,
    v: usize,
    schedule: &Schedule,
) -> usize {
    let z = proto.z();
    let here = proto.shift(c, v).expect("block present");
    let order = &schedule.layer_order;
    let pos = order.iter().position(|&l| l == c).expect("layer scheduled");
    let m = order.len();
    let prev = (1..=m)
        .map(|back| order[(pos + m - back) % m])
        .find(|&l| proto.shift(l, v).is_some())
        .expect("layer c itself contains v");
    let before = proto.shift(prev, v).unwrap();
    (z + here - before) % z
}
