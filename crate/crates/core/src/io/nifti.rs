//! NIfTI-1 single-file (`.nii`, `.nii.gz`) reading and writing.
//!
//! Volumes are brought into an axis-aligned RAS layout in memory: the voxel
//! axes are permuted and flipped so that `i`, `j`, `k` grow towards right,
//! anterior and superior. The on-disk geometry is kept in [`VolumeHeader`]
//! and restored when a volume is written back with that header.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::{Compression, GzBuilder};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::write_atomically;
use crate::volume::{BinaryMask, Grid, LabelVolume, ScalarVolume, Volume};

const HEADER_SIZE: usize = 348;
const VOX_OFFSET: usize = 352;

/// On-disk voxel type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Datatype {
    U8,
    I8,
    I16,
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl Datatype {
    pub fn code(self) -> i16 {
        match self {
            Datatype::U8 => 2,
            Datatype::I16 => 4,
            Datatype::I32 => 8,
            Datatype::F32 => 16,
            Datatype::F64 => 64,
            Datatype::I8 => 256,
            Datatype::U16 => 512,
            Datatype::U32 => 768,
        }
    }

    pub fn from_code(code: i16) -> Option<Self> {
        Some(match code {
            2 => Datatype::U8,
            4 => Datatype::I16,
            8 => Datatype::I32,
            16 => Datatype::F32,
            64 => Datatype::F64,
            256 => Datatype::I8,
            512 => Datatype::U16,
            768 => Datatype::U32,
            _ => return None,
        })
    }

    pub fn size(self) -> usize {
        match self {
            Datatype::U8 | Datatype::I8 => 1,
            Datatype::I16 | Datatype::U16 => 2,
            Datatype::I32 | Datatype::U32 | Datatype::F32 => 4,
            Datatype::F64 => 8,
        }
    }

    pub fn is_integer(self) -> bool {
        !matches!(self, Datatype::F32 | Datatype::F64)
    }

    /// Smallest of u8, i16 and i32 holding every value.
    pub fn smallest_for(values: &[i32]) -> Self {
        let (lo, hi) = values
            .iter()
            .fold((0i32, 0i32), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if lo >= 0 && hi <= u8::MAX as i32 {
            Datatype::U8
        } else if lo >= i16::MIN as i32 && hi <= i16::MAX as i32 {
            Datatype::I16
        } else {
            Datatype::I32
        }
    }
}

/// On-disk geometry and encoding of a NIfTI-1 file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeHeader {
    /// Dimensions in file order.
    pub dims: [usize; 3],
    /// `pixdim[0..4]`; `pixdim[0]` is the qform handedness factor.
    pub pixdim: [f32; 4],
    pub datatype: Datatype,
    pub scl_slope: f32,
    pub scl_inter: f32,
    pub xyzt_units: u8,
    pub qform_code: i16,
    pub sform_code: i16,
    /// `quatern_b, quatern_c, quatern_d, qoffset_x, qoffset_y, qoffset_z`.
    pub quatern: [f32; 6],
    pub srow: [[f32; 4]; 3],
    /// Anatomical direction each file axis points to, e.g. `"LPS"`.
    pub orientation: String,
}

impl VolumeHeader {
    /// Header for a grid already in RAS layout.
    pub fn for_grid(grid: &Grid, datatype: Datatype) -> Self {
        let sp = grid.spacing();
        let o = grid.origin();
        let mut srow = [[0.0f32; 4]; 3];
        for a in 0..3 {
            srow[a][a] = sp[a] as f32;
            srow[a][3] = o[a] as f32;
        }
        Self {
            dims: grid.dims(),
            pixdim: [1.0, sp[0] as f32, sp[1] as f32, sp[2] as f32],
            datatype,
            scl_slope: 1.0,
            scl_inter: 0.0,
            xyzt_units: 2, // millimetres
            qform_code: 1,
            sform_code: 1,
            quatern: [0.0, 0.0, 0.0, o[0] as f32, o[1] as f32, o[2] as f32],
            srow,
            orientation: "RAS".into(),
        }
    }

    /// Voxel-to-world affine (rows), from the sform when set, else the qform,
    /// else the voxel sizes alone.
    pub fn affine(&self) -> [[f64; 4]; 3] {
        if self.sform_code > 0 {
            return self.srow.map(|r| r.map(|v| v as f64));
        }
        let px = [self.pixdim[1], self.pixdim[2], self.pixdim[3]].map(|v| v as f64);
        if self.qform_code > 0 {
            let [b, c, d, x, y, z] = self.quatern.map(|v| v as f64);
            let a = (1.0 - (b * b + c * c + d * d)).max(0.0).sqrt();
            let r = [
                [
                    a * a + b * b - c * c - d * d,
                    2.0 * (b * c - a * d),
                    2.0 * (b * d + a * c),
                ],
                [
                    2.0 * (b * c + a * d),
                    a * a + c * c - b * b - d * d,
                    2.0 * (c * d - a * b),
                ],
                [
                    2.0 * (b * d - a * c),
                    2.0 * (c * d + a * b),
                    a * a + d * d - c * c - b * b,
                ],
            ];
            let qfac = if self.pixdim[0] < 0.0 { -1.0 } else { 1.0 };
            let scale = [px[0], px[1], px[2] * qfac];
            let t = [x, y, z];
            let mut m = [[0.0; 4]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = r[i][j] * scale[j];
                }
                m[i][3] = t[i];
            }
            return m;
        }
        let mut m = [[0.0; 4]; 3];
        for i in 0..3 {
            m[i][i] = px[i];
        }
        m
    }

    /// For each RAS axis: the file axis feeding it and whether it is flipped.
    fn layout(&self) -> [(usize, bool); 3] {
        let m = self.affine();
        let mut used_world = [false; 3];
        let mut used_file = [false; 3];
        let mut out = [(0usize, false); 3];
        // Greedy assignment by largest absolute direction cosine.
        for _ in 0..3 {
            let mut best = (0, 0, -1.0f64);
            for f in 0..3 {
                if used_file[f] {
                    continue;
                }
                let norm = (0..3)
                    .map(|w| m[w][f] * m[w][f])
                    .sum::<f64>()
                    .sqrt()
                    .max(f64::MIN_POSITIVE);
                for w in 0..3 {
                    if !used_world[w] && (m[w][f] / norm).abs() > best.2 {
                        best = (f, w, (m[w][f] / norm).abs());
                    }
                }
            }
            let (f, w, _) = best;
            used_file[f] = true;
            used_world[w] = true;
            out[w] = (f, m[w][f] < 0.0);
        }
        out
    }

    fn orientation_string(&self) -> String {
        let layout = self.layout();
        let mut codes = ['?'; 3];
        for (w, &(f, flip)) in layout.iter().enumerate() {
            codes[f] = match (w, flip) {
                (0, false) => 'R',
                (0, true) => 'L',
                (1, false) => 'A',
                (1, true) => 'P',
                (2, false) => 'S',
                _ => 'I',
            };
        }
        codes.iter().collect()
    }

    /// The RAS grid this header maps to.
    pub fn ras_grid(&self) -> Result<Grid> {
        let m = self.affine();
        let layout = self.layout();
        let mut dims = [0; 3];
        let mut spacing = [0.0; 3];
        let mut first = [0usize; 3];
        for (w, &(f, flip)) in layout.iter().enumerate() {
            dims[w] = self.dims[f];
            spacing[w] = (0..3).map(|r| m[r][f] * m[r][f]).sum::<f64>().sqrt();
            first[f] = if flip { self.dims[f] - 1 } else { 0 };
        }
        let origin =
            [0, 1, 2].map(|r| m[r][3] + (0..3).map(|f| m[r][f] * first[f] as f64).sum::<f64>());
        Grid::new(dims, spacing, origin)
    }

    fn file_index_map(&self) -> FileIndex {
        FileIndex {
            layout: self.layout(),
            dims: self.dims,
        }
    }
}

/// Maps RAS voxel indices to linear offsets in file order.
struct FileIndex {
    layout: [(usize, bool); 3],
    dims: [usize; 3],
}

impl FileIndex {
    fn of(&self, ras: [usize; 3]) -> usize {
        let (layout, d) = (self.layout, self.dims);
        {
            let mut file = [0usize; 3];
            for (w, &(f, flip)) in layout.iter().enumerate() {
                file[f] = if flip { d[f] - 1 - ras[w] } else { ras[w] };
            }
            file[0] + d[0] * (file[1] + d[1] * file[2])
        }
    }
}

/// Decoded voxel values.
#[derive(Debug, Clone, PartialEq)]
pub enum VolumeData {
    Scalar(ScalarVolume),
    Label(LabelVolume),
}

impl VolumeData {
    pub fn grid(&self) -> &Grid {
        match self {
            VolumeData::Scalar(v) => v.grid(),
            VolumeData::Label(v) => v.grid(),
        }
    }

    pub fn into_scalar(self) -> ScalarVolume {
        match self {
            VolumeData::Scalar(v) => v,
            VolumeData::Label(v) => v.map(|&l| l as f32),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NiftiVolume {
    pub header: VolumeHeader,
    pub data: VolumeData,
}

struct Fields<'a> {
    bytes: &'a [u8],
    big_endian: bool,
}

impl Fields<'_> {
    fn get<const N: usize>(&self, off: usize) -> [u8; N] {
        let mut b: [u8; N] = self.bytes[off..off + N].try_into().expect("in bounds");
        if self.big_endian {
            b.reverse();
        }
        b
    }
    fn i16(&self, off: usize) -> i16 {
        i16::from_le_bytes(self.get(off))
    }
    fn i32(&self, off: usize) -> i32 {
        i32::from_le_bytes(self.get(off))
    }
    fn f32(&self, off: usize) -> f32 {
        f32::from_le_bytes(self.get(off))
    }
}

fn load_bytes(path: &Path) -> Result<Vec<u8>> {
    let raw = fs::read(path).map_err(|e| Error::io(path, e))?;
    if raw.len() >= 2 && raw[0] == 0x1f && raw[1] == 0x8b {
        let mut out = Vec::new();
        MultiGzDecoder::new(&raw[..])
            .read_to_end(&mut out)
            .map_err(|e| Error::Format {
                path: path.into(),
                offset: 0,
                message: format!("gzip stream is corrupt: {e}"),
            })?;
        Ok(out)
    } else {
        Ok(raw)
    }
}

/// Reads a NIfTI-1 file. Integer files become [`VolumeData::Label`] unless a
/// non-trivial intensity scaling is present; floating-point files become
/// [`VolumeData::Scalar`].
pub fn read_volume(path: impl AsRef<Path>) -> Result<NiftiVolume> {
    let path = path.as_ref();
    let bytes = load_bytes(path)?;
    let fail = |offset: usize, message: String| Error::Format {
        path: path.into(),
        offset: offset as u64,
        message,
    };
    if bytes.len() < HEADER_SIZE {
        return Err(fail(
            bytes.len(),
            format!("header needs {HEADER_SIZE} bytes, file has {}", bytes.len()),
        ));
    }
    let le = i32::from_le_bytes(bytes[0..4].try_into().unwrap());
    let be = i32::from_be_bytes(bytes[0..4].try_into().unwrap());
    let big_endian = match (le, be) {
        (348, _) => false,
        (_, 348) => true,
        _ => return Err(fail(0, format!("sizeof_hdr is {le}, expected 348"))),
    };
    let h = Fields {
        bytes: &bytes,
        big_endian,
    };
    if &bytes[344..347] != b"n+1" {
        return Err(fail(
            344,
            "magic is not \"n+1\" (only single-file NIfTI-1 is supported)".into(),
        ));
    }

    let ndim = h.i16(40);
    if !(1..=7).contains(&ndim) {
        return Err(fail(40, format!("dim[0] = {ndim} is out of range")));
    }
    let dim: Vec<i16> = (0..7).map(|i| h.i16(42 + 2 * i)).collect();
    let mut dims = [1usize; 3];
    for a in 0..ndim as usize {
        let d = dim[a];
        if d < 1 {
            return Err(fail(
                42 + 2 * a,
                format!("dim[{}] = {d} must be positive", a + 1),
            ));
        }
        if a < 3 {
            dims[a] = d as usize;
        } else if d > 1 {
            return Err(fail(
                42 + 2 * a,
                format!("only 3D volumes are supported, dim[{}] = {d}", a + 1),
            ));
        }
    }

    let code = h.i16(70);
    let datatype = Datatype::from_code(code)
        .ok_or_else(|| fail(70, format!("unsupported datatype code {code}")))?;
    let vox_offset = h.f32(108);
    if !(vox_offset >= HEADER_SIZE as f32) || vox_offset.fract() != 0.0 {
        return Err(fail(108, format!("invalid vox_offset {vox_offset}")));
    }
    let vox_offset = vox_offset as usize;
    let count: usize = dims.iter().product();
    let needed = count * datatype.size();
    let available = bytes.len().saturating_sub(vox_offset);
    if available < needed {
        return Err(fail(
            bytes.len(),
            format!(
                "truncated voxel data: expected {needed} bytes after offset {vox_offset} ({} total), found {available}",
                vox_offset + needed
            ),
        ));
    }

    let mut header = VolumeHeader {
        dims,
        pixdim: [h.f32(76), h.f32(80), h.f32(84), h.f32(88)],
        datatype,
        scl_slope: h.f32(112),
        scl_inter: h.f32(116),
        xyzt_units: bytes[123],
        qform_code: h.i16(252),
        sform_code: h.i16(254),
        quatern: [0, 1, 2, 3, 4, 5].map(|i| h.f32(256 + 4 * i)),
        srow: [0, 1, 2].map(|r| [0, 1, 2, 3].map(|c| h.f32(280 + 16 * r + 4 * c))),
        orientation: String::new(),
    };
    for a in 1..4 {
        if !(header.pixdim[a] > 0.0) && header.sform_code <= 0 {
            return Err(fail(
                76 + 4 * a,
                format!("pixdim[{a}] = {} must be positive", header.pixdim[a]),
            ));
        }
    }
    header.orientation = header.orientation_string();
    let grid = header.ras_grid().map_err(|e| fail(76, e.to_string()))?;

    let raw = &bytes[vox_offset..vox_offset + needed];
    let src = Fields {
        bytes: raw,
        big_endian,
    };
    let slope = header.scl_slope;
    let scaled = slope != 0.0 && slope.is_finite() && (slope != 1.0 || header.scl_inter != 0.0);

    let to_file = header.file_index_map();
    let data = if datatype.is_integer() && !scaled {
        let read = |i: usize| -> Result<i32> {
            Ok(match datatype {
                Datatype::U8 => raw[i] as i32,
                Datatype::I8 => raw[i] as i8 as i32,
                Datatype::I16 => src.i16(2 * i) as i32,
                Datatype::U16 => u16::from_le_bytes(src.get(2 * i)) as i32,
                Datatype::I32 => src.i32(4 * i),
                Datatype::U32 => {
                    let v = u32::from_le_bytes(src.get(4 * i));
                    i32::try_from(v).map_err(|_| {
                        fail(
                            vox_offset + 4 * i,
                            format!("label value {v} exceeds the supported range"),
                        )
                    })?
                }
                _ => unreachable!(),
            })
        };
        let mut values = Vec::with_capacity(count);
        for idx in 0..count {
            values.push(read(to_file.of(grid.voxel_index(idx)))?);
        }
        VolumeData::Label(Volume::new(grid, values)?)
    } else {
        let read = |i: usize| -> f64 {
            match datatype {
                Datatype::U8 => raw[i] as f64,
                Datatype::I8 => raw[i] as i8 as f64,
                Datatype::I16 => src.i16(2 * i) as f64,
                Datatype::U16 => u16::from_le_bytes(src.get(2 * i)) as f64,
                Datatype::I32 => src.i32(4 * i) as f64,
                Datatype::U32 => u32::from_le_bytes(src.get(4 * i)) as f64,
                Datatype::F32 => src.f32(4 * i) as f64,
                Datatype::F64 => f64::from_le_bytes(src.get(8 * i)),
            }
        };
        let values = (0..count)
            .map(|idx| {
                let v = read(to_file.of(grid.voxel_index(idx)));
                if scaled {
                    (v * slope as f64 + header.scl_inter as f64) as f32
                } else {
                    v as f32
                }
            })
            .collect();
        VolumeData::Scalar(Volume::new(grid, values)?)
    };
    Ok(NiftiVolume { header, data })
}

/// Reads any supported file as intensities.
pub fn read_scalar(path: impl AsRef<Path>) -> Result<(ScalarVolume, VolumeHeader)> {
    let v = read_volume(path)?;
    Ok((v.data.into_scalar(), v.header))
}

/// Reads a label file. Floating-point files are accepted when every value is
/// integral.
pub fn read_labels(path: impl AsRef<Path>) -> Result<(LabelVolume, VolumeHeader)> {
    let path = path.as_ref();
    let v = read_volume(path)?;
    let labels = match v.data {
        VolumeData::Label(l) => l,
        VolumeData::Scalar(s) => {
            if let Some((i, x)) = s
                .data()
                .iter()
                .enumerate()
                .find(|(_, x)| x.fract() != 0.0 || !x.is_finite())
            {
                return Err(Error::Format {
                    path: path.into(),
                    offset: VOX_OFFSET as u64,
                    message: format!("voxel {i} holds non-integral label {x}"),
                });
            }
            s.map(|&x| x as i32)
        }
    };
    Ok((labels, v.header))
}

/// Reads a binary mask: nonzero voxels are foreground.
pub fn read_mask(path: impl AsRef<Path>) -> Result<(BinaryMask, VolumeHeader)> {
    let v = read_volume(path)?;
    let mask = match &v.data {
        VolumeData::Label(l) => l.map(|&x| x != 0),
        VolumeData::Scalar(s) => s.map(|&x| x != 0.0),
    };
    Ok((mask, v.header))
}

/// Encodes a volume. With a `template` whose RAS grid equals the volume's
/// grid, the template's file layout and geometry are reproduced; otherwise a
/// RAS header is derived from the grid.
pub fn encode(
    data: &VolumeData,
    datatype: Datatype,
    template: Option<&VolumeHeader>,
) -> Result<Vec<u8>> {
    let grid = *data.grid();
    let mut header = match template {
        Some(t) if t.ras_grid().map(|g| g == grid).unwrap_or(false) => t.clone(),
        Some(t) => {
            log::warn!("template header geometry does not match the volume; writing RAS geometry");
            let _ = t;
            VolumeHeader::for_grid(&grid, datatype)
        }
        None => VolumeHeader::for_grid(&grid, datatype),
    };
    header.datatype = datatype;
    header.scl_slope = 1.0;
    header.scl_inter = 0.0;
    header.orientation = header.orientation_string();

    let count = grid.len();
    let mut out = vec![0u8; VOX_OFFSET + count * datatype.size()];
    write_header(&mut out, &header);

    // Iterate in file order, pulling from the RAS buffer.
    let to_file = header.file_index_map();
    let mut file_to_ras = vec![0usize; count];
    for ras in 0..count {
        file_to_ras[to_file.of(grid.voxel_index(ras))] = ras;
    }
    let body = &mut out[VOX_OFFSET..];
    let size = datatype.size();
    for (file, &ras) in file_to_ras.iter().enumerate() {
        let dst = &mut body[file * size..(file + 1) * size];
        match data {
            VolumeData::Scalar(s) => {
                let v = s.data()[ras];
                match datatype {
                    Datatype::F32 => dst.copy_from_slice(&v.to_le_bytes()),
                    Datatype::F64 => dst.copy_from_slice(&(v as f64).to_le_bytes()),
                    _ => {
                        return Err(Error::InvalidInput(
                            "intensity volumes are written as float32 or float64".into(),
                        ))
                    }
                }
            }
            VolumeData::Label(l) => {
                let v = l.data()[ras];
                let out_of_range =
                    || Error::InvalidInput(format!("label {v} does not fit datatype {datatype:?}"));
                match datatype {
                    Datatype::U8 => dst[0] = u8::try_from(v).map_err(|_| out_of_range())?,
                    Datatype::I8 => dst[0] = i8::try_from(v).map_err(|_| out_of_range())? as u8,
                    Datatype::I16 => dst.copy_from_slice(
                        &i16::try_from(v).map_err(|_| out_of_range())?.to_le_bytes(),
                    ),
                    Datatype::U16 => dst.copy_from_slice(
                        &u16::try_from(v).map_err(|_| out_of_range())?.to_le_bytes(),
                    ),
                    Datatype::I32 => dst.copy_from_slice(&v.to_le_bytes()),
                    Datatype::U32 => dst.copy_from_slice(
                        &u32::try_from(v).map_err(|_| out_of_range())?.to_le_bytes(),
                    ),
                    Datatype::F32 => dst.copy_from_slice(&(v as f32).to_le_bytes()),
                    Datatype::F64 => dst.copy_from_slice(&(v as f64).to_le_bytes()),
                }
            }
        }
    }
    Ok(out)
}

fn write_header(out: &mut [u8], h: &VolumeHeader) {
    let mut put = |off: usize, b: &[u8]| out[off..off + b.len()].copy_from_slice(b);
    put(0, &(HEADER_SIZE as i32).to_le_bytes());
    put(38, b"r");
    put(40, &3i16.to_le_bytes());
    for a in 0..3 {
        put(42 + 2 * a, &(h.dims[a] as i16).to_le_bytes());
    }
    for a in 3..7 {
        put(42 + 2 * a, &1i16.to_le_bytes());
    }
    put(70, &h.datatype.code().to_le_bytes());
    put(72, &((h.datatype.size() * 8) as i16).to_le_bytes());
    let qfac = if h.pixdim[0] < 0.0 { -1.0f32 } else { 1.0 };
    put(76, &qfac.to_le_bytes());
    for a in 1..4 {
        put(76 + 4 * a, &h.pixdim[a].to_le_bytes());
    }
    for a in 4..8 {
        put(76 + 4 * a, &1.0f32.to_le_bytes());
    }
    put(108, &(VOX_OFFSET as f32).to_le_bytes());
    put(112, &h.scl_slope.to_le_bytes());
    put(116, &h.scl_inter.to_le_bytes());
    put(123, &[h.xyzt_units]);
    put(252, &h.qform_code.to_le_bytes());
    put(254, &h.sform_code.to_le_bytes());
    for (i, q) in h.quatern.iter().enumerate() {
        put(256 + 4 * i, &q.to_le_bytes());
    }
    for r in 0..3 {
        for c in 0..4 {
            put(280 + 16 * r + 4 * c, &h.srow[r][c].to_le_bytes());
        }
    }
    put(344, b"n+1\0");
}

fn is_gz(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "gz")
}

/// Writes an encoded volume, gzip-compressed when the path ends in `.gz`
/// (with a zeroed gzip timestamp, so equal inputs give equal bytes).
pub fn write_volume(
    path: impl AsRef<Path>,
    data: &VolumeData,
    datatype: Datatype,
    template: Option<&VolumeHeader>,
) -> Result<()> {
    let path = path.as_ref();
    let raw = encode(data, datatype, template)?;
    let bytes = if is_gz(path) {
        let mut enc = GzBuilder::new()
            .mtime(0)
            .write(Vec::new(), Compression::default());
        enc.write_all(&raw).map_err(|e| Error::io(path, e))?;
        enc.finish().map_err(|e| Error::io(path, e))?
    } else {
        raw
    };
    write_atomically(path, &bytes)
}

/// Writes intensities as float32 without rescaling.
pub fn write_scalar(
    path: impl AsRef<Path>,
    volume: &ScalarVolume,
    template: Option<&VolumeHeader>,
) -> Result<()> {
    write_volume(
        path,
        &VolumeData::Scalar(volume.clone()),
        Datatype::F32,
        template,
    )
}

/// Writes a mask as uint8 zeros and ones.
pub fn write_mask(
    path: impl AsRef<Path>,
    mask: &BinaryMask,
    template: Option<&VolumeHeader>,
) -> Result<()> {
    let labels = mask.map(|&b| b as i32);
    write_volume(path, &VolumeData::Label(labels), Datatype::U8, template)
}

/// Writes labels with an explicit integer datatype.
pub fn write_labels(
    path: impl AsRef<Path>,
    labels: &LabelVolume,
    datatype: Datatype,
    template: Option<&VolumeHeader>,
) -> Result<()> {
    write_volume(path, &VolumeData::Label(labels.clone()), datatype, template)
}
