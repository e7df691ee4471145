"""
kgscatter 數值與輸出設定

所有數值常數集中於此；各函式以關鍵字預設值讀取，呼叫端可逐次覆寫。
本套件不讀取環境變數或設定檔（唯一例外：NO_COLOR 關閉報表中的 ANSI 色彩）。
"""

# specfun：log-gamma
POLE_TOL = 1e-12  # 判定 Γ 極點的距離
STIRLING_MIN_MODULUS = 15.0  # |z| 達此值且 Re z >= 0 時直接使用 Stirling 級數

# specfun：Gauss 2F1
X_SWITCH = 0.5  # x 超過此值改用連接公式
SERIES_RTOL = 1e-16
SERIES_ABS_FLOOR = 1e-300
SERIES_MAX_TERMS = 100_000
CONNECTION_MIN_GAP = 1e-8  # |c - a - b| 下限

# spectra：相對論能階搜尋
SCAN_POINTS = 2000
BISECT_XTOL = 1e-12
BRANCH_JUMP_FACTOR = 1e3  # 端點殘差皆大於 factor * median 視為分支跳躍
WINDOW_LOW_OFFSET = 1e-6  # 預設視窗下界 -M + offset

# oracle：Numerov 積分格點
GRID_STEP_PER_BETA = 1e-3  # h <= 0.001 / β
GRID_POINTS_PER_WAVELENGTH = 40  # h <= 2π / (40 k_ref)
GRID_RMAX_BETA = 30.0  # r_max >= 30 / β
OVERFLOW_LIMIT = 1e300
MATCH_RETRIES = 5
MATCH_MIN_DETERMINANT = 1e-3  # 兩點擬合的條件數下限

# oracle：束縛態 shooting
SHOOT_MAX_STEP = 5e-3
SHOOT_ETOL = 1e-10
SHOOT_DECAY_LENGTHS = 40.0  # r_max = min(30/β, 40/K)
NODE_TAIL_FRACTION = 1e-8  # |u| / max|u| 低於此值的尾端不計節點

# 輸出
SIG_DIGITS = 9
DEFAULT_HBAR = 1.0
DEFAULT_CONVENTION = "principal-log-gamma"
DEFAULT_FORMAT = "csv"

# 比對報表
MATCH_TOL = 1e-3
