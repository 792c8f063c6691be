"""Embed the payload with every scheme, then check the local detector and the codec roundtrip."""

import argparse
import time

from unistego import EmbedOptions, SchemeId, reference_cover, embed, extract
from unistego.steganalysis import attribute, scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--payload", default="Secret Message")
    ap.add_argument("--wrap-width", type=int, default=24)
    args = ap.parse_args()

    cover = reference_cover()
    opts = EmbedOptions(timestamp=0, wrap_width=args.wrap_width)
    verdict = scan(cover.text).verdict
    print(f"{'original':<11} verdict={verdict}")
    for scheme in SchemeId:
        t0 = time.perf_counter()
        stego = embed(scheme, cover, args.payload, opts)
        recovered = extract(scheme, stego.text, opts).as_text
        report = scan(stego.text)
        top = attribute(report)[0][0].value if report.watermarked else "-"
        ms = 1000 * (time.perf_counter() - t0)
        print(f"{scheme.value:<11} verdict={report.verdict:<11} top={top:<11} "
              f"roundtrip={'ok' if recovered == args.payload else 'FAIL'} len={len(stego.text)} {ms:.1f}ms")


if __name__ == "__main__":
    main()
