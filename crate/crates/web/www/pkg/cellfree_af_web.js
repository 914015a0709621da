/* @ts-self-types="./cellfree_af_web.d.ts" */

export class Metrics {
    static __wrap(ptr) {
        const obj = Object.create(Metrics.prototype);
        obj.__wbg_ptr = ptr;
        MetricsFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        MetricsFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_metrics_free(ptr, 0);
    }
    /**
     * `Nλ/2π`; NaN for a continuous ring.
     * @returns {number}
     */
    get alias_radius() {
        const ret = wasm.__wbg_get_metrics_alias_radius(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {boolean}
     */
    get bound_satisfied() {
        const ret = wasm.__wbg_get_metrics_bound_satisfied(this.__wbg_ptr);
        return ret !== 0;
    }
    /**
     * Smallest `N` covering `r_s_max` without aliasing.
     * @returns {number}
     */
    get min_antennas() {
        const ret = wasm.__wbg_get_metrics_min_antennas(this.__wbg_ptr);
        return ret;
    }
    /**
     * First AF null for a narrowband pulse, in wavelengths.
     * @returns {number}
     */
    get resolution() {
        const ret = wasm.__wbg_get_metrics_resolution(this.__wbg_ptr);
        return ret;
    }
    /**
     * `Nλ/2π`; NaN for a continuous ring.
     * @param {number} arg0
     */
    set alias_radius(arg0) {
        wasm.__wbg_set_metrics_alias_radius(this.__wbg_ptr, arg0);
    }
    /**
     * @param {boolean} arg0
     */
    set bound_satisfied(arg0) {
        wasm.__wbg_set_metrics_bound_satisfied(this.__wbg_ptr, arg0);
    }
    /**
     * Smallest `N` covering `r_s_max` without aliasing.
     * @param {number} arg0
     */
    set min_antennas(arg0) {
        wasm.__wbg_set_metrics_min_antennas(this.__wbg_ptr, arg0);
    }
    /**
     * First AF null for a narrowband pulse, in wavelengths.
     * @param {number} arg0
     */
    set resolution(arg0) {
        wasm.__wbg_set_metrics_resolution(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) Metrics.prototype[Symbol.dispose] = Metrics.prototype.free;

/**
 * @param {number} n_antennas
 * @param {number} rw
 * @param {number} theta_ss
 * @param {number} r_max
 * @param {number} points
 * @returns {Float64Array}
 */
export function afCurve(n_antennas, rw, theta_ss, r_max, points) {
    const ret = wasm.afCurve(n_antennas, rw, theta_ss, r_max, points);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {number} n_antennas
 * @param {number} r_s_max
 * @returns {Metrics}
 */
export function designMetrics(n_antennas, r_s_max) {
    const ret = wasm.designMetrics(n_antennas, r_s_max);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return Metrics.__wrap(ret[0]);
}

/**
 * @param {number} n_antennas
 * @param {number} rw
 * @param {number} target_x
 * @param {number} target_y
 * @param {number} half_width
 * @param {number} size
 * @returns {Float64Array}
 */
export function gainMap(n_antennas, rw, target_x, target_y, half_width, size) {
    const ret = wasm.gainMap(n_antennas, rw, target_x, target_y, half_width, size);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./cellfree_af_web_bg.js": import0,
    };
}

const MetricsFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_metrics_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('cellfree_af_web_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
