// Generated by scripts/gen_colormaps.py; do not edit by hand.

pub(super) const HOT: [[u8; 3]; 33] = [
    [11, 0, 0],
    [32, 0, 0],
    [53, 0, 0],
    [74, 0, 0],
    [95, 0, 0],
    [116, 0, 0],
    [137, 0, 0],
    [158, 0, 0],
    [179, 0, 0],
    [200, 0, 0],
    [221, 0, 0],
    [242, 0, 0],
    [255, 8, 0],
    [255, 29, 0],
    [255, 50, 0],
    [255, 71, 0],
    [255, 92, 0],
    [255, 113, 0],
    [255, 134, 0],
    [255, 155, 0],
    [255, 176, 0],
    [255, 197, 0],
    [255, 218, 0],
    [255, 239, 0],
    [255, 255, 7],
    [255, 255, 38],
    [255, 255, 70],
    [255, 255, 101],
    [255, 255, 133],
    [255, 255, 164],
    [255, 255, 196],
    [255, 255, 227],
    [255, 255, 255],
];

pub(super) const JET: [[u8; 3]; 33] = [
    [0, 0, 128],
    [0, 0, 164],
    [0, 0, 200],
    [0, 0, 237],
    [0, 0, 255],
    [0, 32, 255],
    [0, 64, 255],
    [0, 96, 255],
    [0, 128, 255],
    [0, 160, 255],
    [0, 192, 255],
    [0, 224, 251],
    [22, 255, 225],
    [48, 255, 199],
    [73, 255, 173],
    [99, 255, 148],
    [125, 255, 122],
    [151, 255, 96],
    [177, 255, 70],
    [202, 255, 44],
    [228, 255, 19],
    [254, 237, 0],
    [255, 208, 0],
    [255, 178, 0],
    [255, 148, 0],
    [255, 119, 0],
    [255, 89, 0],
    [255, 59, 0],
    [255, 30, 0],
    [232, 0, 0],
    [196, 0, 0],
    [159, 0, 0],
    [128, 0, 0],
];

pub(super) const COOLWARM: [[u8; 3]; 33] = [
    [59, 76, 192],
    [68, 90, 204],
    [78, 104, 216],
    [88, 117, 225],
    [98, 130, 234],
    [108, 143, 241],
    [119, 154, 247],
    [130, 166, 251],
    [141, 176, 254],
    [152, 185, 255],
    [163, 194, 254],
    [174, 201, 252],
    [185, 208, 249],
    [195, 213, 244],
    [204, 217, 237],
    [213, 219, 229],
    [221, 220, 220],
    [229, 216, 209],
    [236, 211, 197],
    [241, 204, 184],
    [245, 196, 172],
    [247, 186, 159],
    [247, 176, 147],
    [246, 165, 134],
    [244, 152, 122],
    [240, 139, 110],
    [235, 125, 98],
    [228, 110, 86],
    [221, 95, 75],
    [212, 78, 65],
    [202, 59, 55],
    [190, 36, 46],
    [180, 4, 38],
];

pub(super) const BLUES: [[u8; 3]; 33] = [
    [247, 251, 255],
    [241, 247, 253],
    [234, 243, 251],
    [228, 239, 249],
    [222, 235, 247],
    [216, 231, 245],
    [210, 227, 243],
    [204, 223, 241],
    [198, 219, 239],
    [188, 215, 235],
    [178, 210, 232],
    [168, 206, 228],
    [157, 202, 225],
    [145, 195, 222],
    [132, 188, 219],
    [119, 181, 217],
    [106, 174, 214],
    [96, 167, 210],
    [86, 160, 206],
    [75, 152, 202],
    [65, 145, 198],
    [57, 137, 193],
    [49, 129, 189],
    [41, 121, 185],
    [32, 112, 180],
    [26, 104, 174],
    [20, 96, 168],
    [14, 88, 162],
    [8, 80, 155],
    [8, 72, 142],
    [8, 64, 130],
    [8, 55, 118],
    [8, 48, 107],
];

pub(super) const REDS: [[u8; 3]; 33] = [
    [255, 245, 240],
    [255, 240, 232],
    [254, 234, 225],
    [254, 229, 217],
    [254, 224, 210],
    [253, 215, 198],
    [253, 205, 185],
    [252, 196, 173],
    [252, 187, 161],
    [252, 176, 149],
    [252, 166, 137],
    [252, 156, 125],
    [252, 146, 114],
    [252, 135, 103],
    [251, 125, 93],
    [251, 115, 83],
    [251, 105, 74],
    [248, 93, 66],
    [245, 82, 58],
    [242, 70, 51],
    [238, 58, 44],
    [229, 50, 40],
    [220, 41, 36],
    [211, 32, 32],
    [202, 24, 29],
    [193, 22, 27],
    [183, 19, 25],
    [173, 17, 23],
    [163, 15, 21],
    [148, 11, 19],
    [132, 7, 17],
    [117, 3, 15],
    [103, 0, 13],
];

pub(super) const HSV: [[u8; 3]; 33] = [
    [255, 0, 0],
    [255, 47, 0],
    [255, 95, 0],
    [255, 142, 0],
    [255, 189, 0],
    [255, 236, 0],
    [226, 255, 0],
    [179, 255, 0],
    [132, 255, 0],
    [85, 255, 0],
    [37, 255, 0],
    [2, 255, 12],
    [0, 255, 57],
    [0, 255, 104],
    [0, 255, 151],
    [0, 255, 199],
    [0, 255, 246],
    [0, 217, 255],
    [0, 170, 255],
    [0, 122, 255],
    [0, 75, 255],
    [0, 28, 255],
    [19, 0, 255],
    [67, 0, 255],
    [114, 0, 255],
    [161, 0, 255],
    [208, 0, 255],
    [250, 0, 249],
    [255, 0, 207],
    [255, 0, 160],
    [255, 0, 113],
    [255, 0, 65],
    [255, 0, 24],
];

pub(super) const VIRIDIS: [[u8; 3]; 33] = [
    [68, 1, 84],
    [71, 13, 96],
    [72, 24, 106],
    [72, 35, 116],
    [71, 45, 123],
    [69, 55, 129],
    [66, 64, 134],
    [62, 73, 137],
    [59, 82, 139],
    [55, 91, 141],
    [51, 99, 141],
    [47, 107, 142],
    [44, 114, 142],
    [41, 122, 142],
    [38, 130, 142],
    [35, 137, 142],
    [33, 145, 140],
    [31, 152, 139],
    [31, 160, 136],
    [34, 167, 133],
    [40, 174, 128],
    [50, 182, 122],
    [63, 188, 115],
    [78, 195, 107],
    [94, 201, 98],
    [112, 207, 87],
    [132, 212, 75],
    [152, 216, 62],
    [173, 220, 48],
    [194, 223, 35],
    [216, 226, 25],
    [236, 229, 27],
    [253, 231, 37],
];
