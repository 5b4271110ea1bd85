"""Fixed 64-sample binary classification set for the logistic finite-sum problem."""

FEATURES = (
    (-0.25,  0.62, -0.47,  0.11, -0.39,  1.00,  0.75,  0.22, -0.86, -0.63),
    ( 0.13,  0.19, -0.06,  0.01, -0.68,  0.59,  0.04, -0.77,  0.74,  0.53),
    (-0.12,  0.52,  0.51, -0.76,  0.71,  0.15,  0.21, -0.15, -0.10,  0.33),
    ( 0.06, -0.41, -0.10,  0.06, -0.03, -0.38,  0.16, -0.74, -0.52,  0.42),
    ( 0.11, -0.75,  0.19, -0.03, -0.40,  0.59,  0.40,  0.09, -0.18,  0.10),
    (-0.37, -0.03,  0.63,  0.35, -0.33,  0.22,  0.41,  0.44,  0.96,  0.38),
    (-0.30, -0.67, -0.22,  0.79,  0.40,  0.20, -0.23,  0.26,  0.32,  0.14),
    (-0.86, -0.52,  1.53, -0.28,  0.81,  0.57, -0.59,  0.56, -0.72, -0.13),
    (-0.83,  0.48, -0.99,  0.40, -0.99,  0.30,  0.56,  0.81,  0.20, -0.14),
    ( 0.47, -0.46, -1.20, -0.37,  0.36,  0.17,  0.03, -0.31,  0.09,  0.53),
    ( 0.66, -0.01, -0.29,  0.50,  0.26,  0.47, -0.72, -0.81, -1.01,  0.08),
    (-0.09,  0.16, -0.63, -0.14,  0.53,  0.02, -1.24,  0.59,  0.09,  0.03),
    (-0.11, -0.44, -0.13, -0.58, -0.62,  1.05,  0.68, -0.21, -0.09, -0.90),
    ( 0.21, -0.29, -0.78, -0.36,  0.16,  0.25,  0.35, -0.02,  0.66, -0.14),
    (-0.44,  0.04, -0.19,  0.24, -0.45,  0.45, -0.12, -0.37, -0.39,  0.02),
    (-0.08, -0.01,  0.06,  0.51, -0.29, -0.35, -0.48, -0.62,  0.04, -0.86),
    (-0.50,  0.38,  0.60, -0.01,  0.05,  0.66,  0.41,  0.10, -0.23, -0.37),
    ( 0.19, -0.36,  0.39,  0.32, -0.31, -0.59, -0.06, -0.74, -0.77,  0.72),
    (-0.76,  0.35,  0.00,  0.32,  0.44,  0.20,  1.10, -0.26,  0.21,  0.23),
    ( 0.33, -1.29,  0.80, -0.50,  0.54,  0.02,  0.61,  0.53, -0.61,  0.75),
    (-0.13,  0.87, -0.39, -0.04, -0.50, -0.72, -0.18, -0.43, -0.86, -0.40),
    (-0.47,  0.04, -0.85, -0.33,  0.11, -0.34, -0.10, -0.32,  0.59, -0.07),
    (-0.22, -0.12, -0.02,  0.72,  0.43,  0.22,  0.57,  0.11,  0.06, -0.03),
    (-0.64, -0.20, -0.55,  0.29,  0.38,  0.13,  0.59, -0.03,  0.36,  0.44),
    (-0.26,  0.12, -0.75, -0.59, -0.31,  0.05,  0.42, -0.77,  0.28, -0.73),
    (-0.29, -0.32,  0.28, -0.59,  0.69, -0.11, -0.03,  0.22, -0.13, -0.20),
    ( 0.45,  0.74,  0.00, -0.72, -0.14, -0.74, -0.38, -0.38,  0.15,  0.29),
    ( 0.11,  1.00,  0.60,  0.68, -0.69,  0.07,  0.55, -0.39,  0.56,  0.03),
    ( 0.87,  0.36,  0.70, -0.75,  0.22,  0.22,  0.56, -0.03, -0.01,  0.10),
    ( 0.34, -0.12, -0.34,  0.24, -0.13,  0.12, -0.12, -0.09,  0.44,  0.58),
    ( 1.38, -0.64, -0.54,  0.57, -0.61, -0.94,  1.05, -0.37,  0.12, -0.08),
    ( 0.26,  0.20, -0.84,  0.17,  0.31,  0.94, -1.09, -0.47,  0.39,  0.25),
    ( 0.53, -0.74,  0.51,  0.50,  0.56,  0.45, -1.62, -0.42,  0.65, -0.09),
    (-0.49, -0.14, -0.38, -0.18,  1.27,  0.05,  0.13, -0.67, -0.45, -0.08),
    (-0.48, -0.35,  0.16, -0.36,  0.24, -0.87, -0.05,  0.43,  0.32, -0.37),
    (-0.27,  0.96,  0.38,  0.02,  0.46, -0.43,  0.31, -0.30, -0.21,  0.28),
    (-0.38, -0.31, -1.42, -0.32,  0.02, -0.09, -0.30,  0.20,  0.67,  0.15),
    (-0.75,  0.45, -0.81, -0.23, -0.84,  0.25, -1.06, -0.32,  0.36,  0.32),
    (-0.40, -0.50, -0.92, -0.12, -1.13, -0.42,  1.02,  0.40,  0.63, -0.04),
    (-0.20, -0.25,  0.69, -1.45,  0.23,  0.23,  0.45, -0.24, -0.35, -0.47),
    ( 0.05,  0.14, -0.12, -0.09, -0.57,  1.05, -0.41,  0.53, -0.56,  0.16),
    (-0.15, -0.24, -0.77, -0.05, -0.16,  0.24, -0.13, -0.25, -0.87, -0.11),
    ( 0.46,  0.27, -0.04, -0.20,  0.38,  0.66, -0.21,  0.21, -0.25, -0.05),
    ( 0.35,  0.39,  0.43,  0.18,  0.79, -0.42,  0.31, -0.61, -0.60, -0.29),
    ( 0.16, -0.27, -0.33, -1.52,  0.02, -0.20,  0.27, -0.05, -0.04, -0.03),
    (-0.04,  0.47,  1.01,  0.16, -0.05,  0.34, -0.20, -0.38, -0.30,  0.84),
    ( 0.68, -0.72, -1.00, -0.02,  0.38, -0.34, -0.30,  0.01,  0.96,  0.16),
    ( 0.37,  0.51, -0.59,  0.78, -0.06, -0.14, -0.01, -1.73, -0.41, -0.43),
    (-0.63,  0.09,  0.72,  0.23,  0.03,  0.09, -0.20,  0.29, -0.34,  1.41),
    (-0.53,  0.69,  0.15,  0.04,  0.38, -0.02,  0.25,  0.18, -0.28,  0.35),
    (-0.74, -0.79, -0.20, -0.68,  0.25, -0.40, -0.42, -0.19, -0.39, -0.32),
    (-0.75, -0.39, -0.06,  0.79, -0.02, -0.67,  0.23,  0.03,  1.03, -0.82),
    (-0.53, -0.10, -0.03,  0.24, -0.57, -0.18,  0.03, -0.18,  0.33,  0.12),
    (-0.27, -0.77, -0.29,  1.42,  0.33, -0.43,  1.23,  0.20,  1.16, -0.88),
    ( 0.11,  1.00, -0.18,  0.15,  0.46,  0.57, -0.26, -0.57,  0.19,  0.33),
    (-0.04, -0.56,  0.36,  0.14,  0.92, -0.23,  0.81,  0.43, -0.17, -0.52),
    ( 0.81,  0.13, -0.76, -0.60,  0.35, -1.28, -0.08, -0.57,  0.59,  0.11),
    ( 0.13,  0.57,  0.30, -0.30,  0.34,  0.64,  0.32, -0.74,  0.93,  0.41),
    (-0.15,  0.49,  0.92, -0.46, -0.23,  0.26, -0.98,  0.12, -0.45,  0.03),
    (-0.12, -0.06,  1.04,  0.42, -0.07, -0.66,  0.72,  0.80, -0.58,  0.42),
    ( 0.01,  0.03, -0.47, -0.19,  1.00,  1.11,  0.45,  0.12,  0.22,  0.67),
    ( 0.27, -0.28,  0.89, -0.09, -0.01, -0.66, -0.27,  0.06,  0.40,  0.14),
    ( 0.29, -0.25,  0.18,  1.47,  0.31, -0.69,  0.26, -1.02,  0.51, -0.82),
    (-0.52, -0.39,  0.18,  0.24, -0.97, -1.06,  0.10,  0.14, -0.44, -1.15),
)

LABELS = (
    -1, -1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1, 1,
    1, 1, 1, 1, -1, 1, 1, 1, -1, 1, -1, -1, -1, -1, 1, 1,
    1, 1, -1, 1, -1, -1, -1, 1, -1, 1, 1, 1, -1, 1, -1, 1,
    1, -1, 1, -1, -1, 1, -1, 1, -1, -1, -1, 1, 1, -1, 1, -1,
)
