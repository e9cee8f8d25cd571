"""Drive a four-channel array and read its bits each clock tick."""
import numpy as np

from degenerate_spinors import device

CLOCK = 1e-12


def main():
    cfg = device.DeviceConfig(n_channels=4, clock_period=CLOCK)
    print(f"latency {cfg.latency:.4e} s, throughput {device.throughput(cfg):.2e} bit/s")
    print(f"full slab: {device.throughput(device.DeviceConfig(n_channels=cfg.max_channels)):.2e} bit/s")
    dev = device.Device(cfg)
    schedule = []
    for tick in range(8):
        for k in range(4):
            schedule.append((tick * CLOCK, k, "on" if (tick >> k) & 1 else "off"))
    # an ambient field forces channel 3 on for two ticks
    schedule += [(8 * CLOCK, 3, "on", "ambient"), (10 * CLOCK, 3, "off", "ambient")]
    dev.apply_schedule(schedule)
    dev.run_until(12 * CLOCK)
    bits = dev.readout((np.arange(12) + 0.999) * CLOCK)
    for k, row in enumerate(bits):
        print(f"channel {k}: {''.join(map(str, row))}")
    print("missed bits:", len(dev.missed_bits()))


if __name__ == "__main__":
    main()
