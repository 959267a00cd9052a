"""Emit the embedded colormap control tables (crates/core/src/colormap/tables.rs)."""
import matplotlib

N = 33
MAPS = ["hot", "jet", "coolwarm", "Blues", "Reds", "hsv", "viridis"]

out = ["// Generated by scripts/gen_colormaps.py; do not edit by hand.", ""]
for name in MAPS:
    cmap = matplotlib.colormaps[name]
    rows = []
    for i in range(N):
        r, g, b, _ = cmap(i / (N - 1))
        rows.append("    [%d, %d, %d]," % (round(r * 255), round(g * 255), round(b * 255)))
    out.append("pub(super) const %s: [[u8; 3]; %d] = [" % (name.upper(), N))
    out.extend(rows)
    out.append("];")
    out.append("")
print("\n".join(out).rstrip())
