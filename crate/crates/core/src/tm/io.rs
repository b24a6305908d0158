//! Binary model format, all integers little endian:
//!
//! ```text
//! "OWTM1"
//! u32 vocab_size o     u32 clauses m     u32 states_per_action N
//! u32 vote_target      f64 sensitivity   u64 epochs     u64 seed
//! u8 negated-literal mode (0 standard, 1 Type II only)
//! u16 state * (m * 2o)    clause-major, literal-minor
//! ```
//!
//! Clauses `0..m/2` are positive, `m/2..m` negative.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::tm::{AutomatonState, Clause, NegatedLiterals, Polarity, TrainParams, TsetlinMachine};

pub const MODEL_MAGIC: &[u8; 5] = b"OWTM1";

impl TsetlinMachine {
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let p = self.params();
        w.write_all(MODEL_MAGIC)?;
        w.write_all(&(self.vocab_size() as u32).to_le_bytes())?;
        w.write_all(&(self.num_clauses() as u32).to_le_bytes())?;
        w.write_all(&u32::from(p.states_per_action).to_le_bytes())?;
        w.write_all(&p.vote_target.to_le_bytes())?;
        w.write_all(&p.sensitivity.to_le_bytes())?;
        w.write_all(&(p.epochs as u64).to_le_bytes())?;
        w.write_all(&p.seed.to_le_bytes())?;
        w.write_all(&[match p.negated_literals {
            NegatedLiterals::Standard => 0u8,
            NegatedLiterals::TypeIiOnly => 1,
        }])?;
        let mut buf = Vec::with_capacity(4 * self.vocab_size());
        for c in self.clauses() {
            buf.clear();
            for a in c.automata() {
                buf.extend_from_slice(&a.value().to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut magic = [0u8; 5];
        read_exact(r, &mut magic)?;
        if &magic != MODEL_MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let vocab_size = read_u32(r)? as usize;
        let num_clauses = read_u32(r)? as usize;
        let n = read_u32(r)?;
        let states_per_action = u16::try_from(n)
            .map_err(|_| Error::Format(format!("states per action {n} too large")))?;
        let vote_target = read_u32(r)?;
        let sensitivity = f64::from_le_bytes(read_array(r)?);
        let epochs = u64::from_le_bytes(read_array(r)?) as usize;
        let seed = u64::from_le_bytes(read_array(r)?);
        let negated_literals = match read_array::<_, 1>(r)?[0] {
            0 => NegatedLiterals::Standard,
            1 => NegatedLiterals::TypeIiOnly,
            other => {
                return Err(Error::Format(format!(
                    "unknown negated-literal mode {other}"
                )))
            }
        };
        let params = TrainParams {
            num_clauses,
            vote_target,
            sensitivity,
            epochs,
            states_per_action,
            seed,
            negated_literals,
        };
        params
            .validate()
            .map_err(|e| Error::Format(format!("stored parameters invalid: {e}")))?;

        let half = num_clauses / 2;
        let mut positive = Vec::with_capacity(half);
        let mut negative = Vec::with_capacity(half);
        let mut raw = vec![0u8; 2 * 2 * vocab_size];
        for j in 0..num_clauses {
            read_exact(r, &mut raw)?;
            let automata = raw
                .chunks_exact(2)
                .map(|b| {
                    let v = u16::from_le_bytes([b[0], b[1]]);
                    AutomatonState::new(v, states_per_action)
                        .map_err(|e| Error::Format(format!("clause {j}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if j < half {
                positive.push(Clause::from_states(
                    Polarity::Positive,
                    states_per_action,
                    automata,
                )?);
            } else {
                negative.push(Clause::from_states(
                    Polarity::Negative,
                    states_per_action,
                    automata,
                )?);
            }
        }
        TsetlinMachine::from_clauses(vocab_size, params, positive, negative)
    }

    pub fn from_bytes(mut bytes: &[u8]) -> Result<Self> {
        let m = Self::read_from(&mut bytes)?;
        if !bytes.is_empty() {
            return Err(Error::Format(format!("{} trailing bytes", bytes.len())));
        }
        Ok(m)
    }
}

fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    r.read_exact(buf).map_err(|e| {
        if e.kind() == std::io::ErrorKind::UnexpectedEof {
            Error::Format("truncated model".into())
        } else {
            Error::io("<model>", e)
        }
    })
}

fn read_array<R: Read, const K: usize>(r: &mut R) -> Result<[u8; K]> {
    let mut b = [0u8; K];
    read_exact(r, &mut b)?;
    Ok(b)
}

pub(crate) fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    Ok(u32::from_le_bytes(read_array(r)?))
}
