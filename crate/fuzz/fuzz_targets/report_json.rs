#![no_main]

use libfuzzer_sys::fuzz_target;
use valprime::pipeline::PipelineReport;
use valprime::places::ApproxCertificate;
use valprime::powers::VerificationReport;
use valprime::smooth::DensityReport;

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<PipelineReport>(data);
    let _ = serde_json::from_slice::<VerificationReport>(data);
    let _ = serde_json::from_slice::<DensityReport>(data);
    if let Ok(cert) = serde_json::from_slice::<ApproxCertificate>(data) {
        let _ = cert.verify();
    }
});
